//! Jones polynomial of a braid closure from the Kauffman bracket state sum.
//!
//! Works with integer Laurent polynomials in `A` and never touches the quantum group code, so it
//! serves as an independent check of `a_2`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::scalar::{CyclotomicField, CyclotomicNumber};
use crate::tangle::{FramedBraidWord, Letter};

/// The bracket variable is `A = ζ^MIRROR_A_POWER` with `ζ = exp(πi/2p)`.
///
/// Fixed once by matching the trefoil `σ_1^3`; the other sign gives the mirror image.
pub const MIRROR_A_POWER: i64 = 1;

/// Largest number of crossings the state sum accepts.
pub const MAX_CROSSINGS: usize = 20;

/// Integer Laurent polynomial in one variable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent {
    terms: BTreeMap<i64, i64>,
}

impl Laurent {
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut l = Laurent::default();
        l.add_term(c, e);
        l
    }

    fn add_term(&mut self, c: i64, e: i64) {
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&e, &c) in &o.terms {
            out.add_term(c, e);
        }
        out
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &o.terms {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Laurent {
        (0..k).fold(Laurent::monomial(1, 0), |acc, _| acc.mul(self))
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.terms.iter().map(|(&e, &c)| x.powi(e as i32) * c as f64).sum()
    }

    /// Value at `x = ζ^k`, exactly.
    pub fn eval_root(&self, field: &'static CyclotomicField, k: i64) -> CyclotomicNumber {
        let mut acc = field.zero();
        for (&e, &c) in &self.terms {
            acc = &acc + &(&field.from_i64(c) * &field.zeta_pow(e * k));
        }
        acc
    }

    /// Substitutes `x ↦ x^{1/k}`; every exponent must be divisible by `k`.
    pub fn root_substitute(&self, k: i64) -> Option<Laurent> {
        let mut out = Laurent::default();
        for (&e, &c) in &self.terms {
            if e % k != 0 {
                return None;
            }
            out.add_term(c, e / k);
        }
        Some(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(e, c)| format!("{c}*x^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `<closure of b>` normalized to 1 on the unknot. Twist letters are ignored.
pub fn kauffman_bracket(word: &FramedBraidWord) -> Result<Laurent> {
    let n = word.strands();
    let crossings: Vec<(usize, bool)> = word
        .letters()
        .iter()
        .filter_map(|l| match *l {
            Letter::Sigma { i, inverse } => Some((i - 1, !inverse)),
            Letter::Tau { .. } => None,
        })
        .collect();
    let m = crossings.len();
    if m > MAX_CROSSINGS {
        return Err(Error::InvalidParameter(format!("{m} crossings exceed the state-sum limit {MAX_CROSSINGS}")));
    }
    let delta = Laurent::monomial(-1, 2).add(&Laurent::monomial(-1, -2));
    let node = |level: usize, pos: usize| level * n + pos;
    let mut total = Laurent::default();
    for state in 0u32..(1 << m) {
        let mut uf = UnionFind::<usize>::new((m + 1) * n);
        let mut a_power = 0i64;
        for (k, &(i, positive)) in crossings.iter().enumerate() {
            for j in (0..n).filter(|&j| j != i && j != i + 1) {
                uf.union(node(k, j), node(k + 1, j));
            }
            let a_smoothing = state & (1 << k) == 0;
            a_power += if a_smoothing { 1 } else { -1 };
            // the A-smoothing of a positive crossing joins the strands vertically
            if positive == a_smoothing {
                uf.union(node(k, i), node(k + 1, i));
                uf.union(node(k, i + 1), node(k + 1, i + 1));
            } else {
                uf.union(node(k, i), node(k, i + 1));
                uf.union(node(k + 1, i), node(k + 1, i + 1));
            }
        }
        for j in 0..n {
            uf.union(node(m, j), node(0, j));
        }
        let mut roots: Vec<usize> = (0..(m + 1) * n).map(|x| uf.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        total = total.add(&Laurent::monomial(1, a_power).mul(&delta.pow(roots.len() as u32 - 1)));
    }
    Ok(total)
}

/// Jones polynomial as a Laurent polynomial in `A`: `(-A^3)^{-w} <b>`.
pub fn jones_polynomial(word: &FramedBraidWord) -> Result<Laurent> {
    let w = word.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(Laurent::monomial(sign, -3 * w).mul(&kauffman_bracket(word)?))
}

/// Jones polynomial in `t = A^{-4}`.
pub fn jones_in_t(word: &FramedBraidWord) -> Result<Laurent> {
    word.ensure_knot()?;
    let v = jones_polynomial(word)?;
    let flipped = Laurent { terms: v.terms().map(|(e, c)| (-e, c)).collect() };
    flipped
        .root_substitute(4)
        .ok_or_else(|| Error::Convention("knot Jones polynomial has exponents outside 4Z".into()))
}

/// The Jones polynomial at `A = ζ^MIRROR_A_POWER`, in double precision.
pub fn jones_at_root(word: &FramedBraidWord, p: u32) -> Result<Complex64> {
    let a = Complex64::from_polar(1.0, std::f64::consts::PI * MIRROR_A_POWER as f64 / (2.0 * p as f64));
    Ok(jones_polynomial(word)?.eval(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::preset;

    fn t_poly(pairs: &[(i64, i64)]) -> Laurent {
        let mut l = Laurent::default();
        for &(e, c) in pairs {
            l.add_term(c, e);
        }
        l
    }

    #[test]
    fn unknot_and_trefoil() {
        assert_eq!(jones_in_t(&preset("unknot").unwrap()).unwrap(), Laurent::monomial(1, 0));
        // one-crossing unknot
        let w = FramedBraidWord::parse("s1", 2).unwrap();
        assert_eq!(jones_polynomial(&w).unwrap(), Laurent::monomial(1, 0));
        let v = jones_in_t(&preset("trefoil").unwrap()).unwrap();
        let mirror = jones_in_t(&FramedBraidWord::parse("S1 S1 S1", 2).unwrap()).unwrap();
        // σ_1^3 is the right-handed trefoil
        assert_eq!(v, t_poly(&[(1, 1), (3, 1), (4, -1)]));
        assert_eq!(mirror, t_poly(&[(-1, 1), (-3, 1), (-4, -1)]));
    }

    #[test]
    fn figure_eight_is_amphichiral() {
        let v = jones_in_t(&preset("figure8").unwrap()).unwrap();
        assert_eq!(v, t_poly(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
    }

    #[test]
    fn cinquefoil() {
        let v = jones_in_t(&preset("cinquefoil").unwrap()).unwrap();
        assert_eq!(v, t_poly(&[(2, 1), (4, 1), (5, -1), (6, 1), (7, -1)]));
    }

    #[test]
    fn exact_and_float_evaluation_agree() {
        let field = CyclotomicField::get(7).unwrap();
        let v = jones_polynomial(&preset("figure8").unwrap()).unwrap();
        let exact = v.eval_root(field, MIRROR_A_POWER).to_c64();
        let float = jones_at_root(&preset("figure8").unwrap(), 7).unwrap();
        assert!((exact - float).norm() < 1e-12);
    }
}
