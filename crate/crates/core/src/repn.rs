//! Based weight modules with explicit `E`, `F`, `K` actions.
//!
//! Every basis vector is a weight vector. Its weight `w` is stored as an integer key plus a
//! common base (zero for integral modules, `λ` for `X(λ)` and `Y(λ, s)`), and `K` acts by `q^w`.
//! The stored weight is a lift of the `K` eigenvalue; the lifts are chosen so that `E` raises
//! every key by exactly 2 and `F` lowers it by 2, which keeps `ζ^{w₁ w₂}` in the R-matrix
//! consistent across the whole module.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{Dense, Sparse};
use crate::scalar::{Backend, ComplexScalar, Numeric, Scalar};

/// Which family a module belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// `X^α(s)`, `1 <= s <= p`.
    Irreducible { alpha: i8, s: u32 },
    /// `P^α(t)`, the projective cover of `X^α(t)`, `1 <= t <= p-1`.
    Projective { alpha: i8, t: u32 },
    /// `X(λ)`, spanned by `v_0 … v_{p-1}`.
    XLambda,
    /// `Y(λ, s)`, spanned by `c_0 … c_{p-1}, d_0 … d_{p-1}`.
    YGlued { s: u32 },
}

/// A finite-dimensional module given on a weight basis.
#[derive(Clone, Debug)]
pub struct WeightModule<B: Backend> {
    backend: B,
    kind: ModuleKind,
    name: String,
    labels: Vec<String>,
    keys: Vec<i64>,
    weights: Vec<B::Weight>,
    e: Sparse<B::S>,
    f: Sparse<B::S>,
}

struct Builder<B: Backend> {
    backend: B,
    base: B::Weight,
    labels: Vec<String>,
    keys: Vec<i64>,
    e: Vec<(usize, usize, B::S)>,
    f: Vec<(usize, usize, B::S)>,
}

impl<B: Backend> Builder<B> {
    fn new(backend: &B, base: B::Weight) -> Self {
        Builder { backend: backend.clone(), base, labels: Vec::new(), keys: Vec::new(), e: Vec::new(), f: Vec::new() }
    }

    fn vector(&mut self, label: String, key: i64) -> usize {
        self.labels.push(label);
        self.keys.push(key);
        self.keys.len() - 1
    }

    /// `[n][base + shift]`.
    fn qq(&self, n: i64, shift: i64) -> B::S {
        let b = &self.backend;
        let left = b.quantum_integer(&b.weight_from_i64(n));
        left.mul_ref(&b.quantum_integer(&b.shift_weight(&self.base, shift)))
    }

    /// `[n][m]` for integers.
    fn qi2(&self, n: i64, m: i64) -> B::S {
        let b = &self.backend;
        b.quantum_integer(&b.weight_from_i64(n)).mul_ref(&b.quantum_integer(&b.weight_from_i64(m)))
    }

    fn finish(self, kind: ModuleKind, name: String) -> WeightModule<B> {
        let d = self.keys.len();
        let mut e = Sparse::new(d, d);
        let mut f = Sparse::new(d, d);
        for (i, j, v) in self.e {
            e.add_entry(i, j, v);
        }
        for (i, j, v) in self.f {
            f.add_entry(i, j, v);
        }
        let weights = self.keys.iter().map(|&k| self.backend.shift_weight(&self.base, k)).collect();
        WeightModule { backend: self.backend, kind, name, labels: self.labels, keys: self.keys, weights, e, f }
    }
}

fn check_alpha(alpha: i8) -> Result<()> {
    if alpha == 1 || alpha == -1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("alpha must be +1 or -1, got {alpha}")))
    }
}

fn sign_char(alpha: i8) -> char {
    if alpha > 0 { '+' } else { '-' }
}

/// The irreducible module `X^α(s)` with basis `|s,n⟩^α`.
pub fn build_irreducible<B: Backend>(backend: &B, alpha: i8, s: u32) -> Result<WeightModule<B>> {
    check_alpha(alpha)?;
    let p = backend.p();
    if s < 1 || s > p {
        return Err(Error::InvalidParameter(format!("irreducible dimension s={s} outside 1..={p}")));
    }
    let si = s as i64;
    let shift = if alpha > 0 { 0 } else { p as i64 };
    let sc = sign_char(alpha);
    let mut b = Builder::new(backend, backend.weight_from_i64(0));
    for n in 0..si {
        b.vector(format!("|{s},{n}>{sc}"), si - 1 - 2 * n + shift);
    }
    for n in 0..si {
        if n >= 1 {
            let mut v = b.qi2(n, si - n);
            if alpha < 0 {
                v = v.neg_ref();
            }
            b.e.push((n as usize - 1, n as usize, v));
        }
        if n + 1 < si {
            b.f.push((n as usize + 1, n as usize, backend.one()));
        }
    }
    Ok(b.finish(ModuleKind::Irreducible { alpha, s }, format!("X{sc}({s})")))
}

/// The projective module `P^α(t)`, `1 <= t <= p-1`.
///
/// `P^+(s)` has basis `x_k, y_k` (`0 <= k < p-s`) and `a_n, b_n` (`0 <= n < s`); `b_0` generates
/// it and `a_0` spans the socle. `P^-(p-s)` uses the same labels with superscript `(-,s)`; there
/// `y_0` generates and `x_0` spans the socle.
pub fn build_projective<B: Backend>(backend: &B, alpha: i8, t: u32) -> Result<WeightModule<B>> {
    check_alpha(alpha)?;
    let p = backend.p();
    if t < 1 || t >= p {
        return Err(Error::InvalidParameter(format!("projective index t={t} outside 1..{p}")));
    }
    let pi = p as i64;
    let s = if alpha > 0 { t as i64 } else { pi - t as i64 };
    let m = pi - s;
    let sc = sign_char(alpha);
    let mut b = Builder::new(backend, backend.weight_from_i64(0));
    let x0 = b.keys.len();
    for k in 0..m {
        b.vector(format!("x{k}({sc},{s})"), 2 * pi - s - 1 - 2 * k);
    }
    let y0 = b.keys.len();
    for k in 0..m {
        let key = if alpha > 0 { -s - 1 - 2 * k } else { 2 * pi - s - 1 - 2 * k };
        b.vector(format!("y{k}({sc},{s})"), key);
    }
    let a0 = b.keys.len();
    for n in 0..s {
        let key = if alpha > 0 { s - 1 - 2 * n } else { 2 * pi + s - 1 - 2 * n };
        b.vector(format!("a{n}({sc},{s})"), key);
    }
    let b0 = b.keys.len();
    for n in 0..s {
        b.vector(format!("b{n}({sc},{s})"), s - 1 - 2 * n);
    }
    let (x, y, a, bb) = (
        |k: i64| x0 + k as usize,
        |k: i64| y0 + k as usize,
        |n: i64| a0 + n as usize,
        |n: i64| b0 + n as usize,
    );
    let one = backend.one();
    for k in 0..m {
        if k >= 1 {
            let c = b.qi2(k, pi - s - k).neg_ref();
            b.e.push((x(k - 1), x(k), c.clone()));
            b.e.push((y(k - 1), y(k), c));
            if alpha < 0 {
                b.e.push((x(k - 1), y(k), one.clone()));
            }
        } else {
            b.e.push((a(s - 1), y(0), one.clone()));
        }
        if k + 1 < m {
            b.f.push((x(k + 1), x(k), one.clone()));
            b.f.push((y(k + 1), y(k), one.clone()));
        } else if alpha > 0 {
            b.f.push((a(0), x(k), one.clone()));
        } else {
            b.f.push((bb(0), y(k), one.clone()));
        }
    }
    for n in 0..s {
        if n >= 1 {
            let c = b.qi2(n, s - n);
            b.e.push((a(n - 1), a(n), c.clone()));
            b.e.push((bb(n - 1), bb(n), c));
            if alpha > 0 {
                b.e.push((a(n - 1), bb(n), one.clone()));
            }
        } else {
            b.e.push((x(m - 1), bb(0), one.clone()));
        }
        if n + 1 < s {
            b.f.push((a(n + 1), a(n), one.clone()));
            b.f.push((bb(n + 1), bb(n), one.clone()));
        } else if alpha > 0 {
            b.f.push((y(0), bb(n), one.clone()));
        } else {
            b.f.push((x(0), a(n), one.clone()));
        }
    }
    Ok(b.finish(ModuleKind::Projective { alpha, t }, format!("P{sc}({t})")))
}

/// `X(λ)`: `E v_n = [n][λ-n] v_{n-1}`, `F v_n = v_{n+1}`, `K v_n = q^{λ-1-2n} v_n`.
pub fn build_x_lambda(backend: &Numeric, lambda: &ComplexScalar) -> WeightModule<Numeric> {
    let p = backend.p() as i64;
    let mut b = Builder::new(backend, lambda.clone());
    for n in 0..p {
        b.vector(format!("v{n}"), -1 - 2 * n);
    }
    for n in 0..p {
        if n >= 1 {
            let c = b.qq(n, -n);
            b.e.push((n as usize - 1, n as usize, c));
        }
        if n + 1 < p {
            b.f.push((n as usize + 1, n as usize, backend.one()));
        }
    }
    b.finish(ModuleKind::XLambda, format!("X({})", backend.describe_weight(lambda)))
}

/// `Y(λ, s)`: two `X`-type ladders `c_n`, `d_n` glued by `E d_n ∋ c_{n+s-1}`.
///
/// For `s = p` the gluing leaves `E^p ≠ 0`, so only `s < p` gives a module; `s = p` is still built.
pub fn build_y_glued(backend: &Numeric, lambda: &ComplexScalar, s: u32) -> Result<WeightModule<Numeric>> {
    let p = backend.p() as i64;
    if s < 1 || s as i64 > p {
        return Err(Error::InvalidParameter(format!("glued index s={s} outside 1..={p}")));
    }
    let si = s as i64;
    let mut b = Builder::new(backend, lambda.clone());
    for n in 0..p {
        b.vector(format!("c{n}"), -1 - 2 * n);
    }
    for n in 0..p {
        b.vector(format!("d{n}"), -1 - 2 * si - 2 * n);
    }
    let c = |n: i64| n as usize;
    let d = |n: i64| (p + n) as usize;
    let one = backend.one();
    for n in 0..p {
        if n >= 1 {
            let v = b.qq(n, -n);
            b.e.push((c(n - 1), c(n), v));
            let v = b.qq(n, -2 * si - n);
            b.e.push((d(n - 1), d(n), v));
            if n <= p - si {
                b.e.push((c(n + si - 1), d(n), one.clone()));
            }
        } else {
            b.e.push((c(si - 1), d(0), one.clone()));
        }
        if n + 1 < p {
            b.f.push((c(n + 1), c(n), one.clone()));
            b.f.push((d(n + 1), d(n), one.clone()));
        }
    }
    Ok(b.finish(ModuleKind::YGlued { s }, format!("Y({},{s})", backend.describe_weight(lambda))))
}

/// One line of a relation report.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub passed: bool,
    /// Largest entry of the difference of the two sides (0 for exact passes).
    pub residual: f64,
}

/// Result of [`WeightModule::check_relations`].
#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub module: String,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl<B: Backend> WeightModule<B> {
    pub fn backend(&self) -> &B {
        &self.backend
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Integer part of each weight; differences of keys are differences of weights.
    pub fn keys(&self) -> &[i64] {
        &self.keys
    }

    pub fn weights(&self) -> &[B::Weight] {
        &self.weights
    }

    pub fn e(&self) -> &Sparse<B::S> {
        &self.e
    }

    pub fn f(&self) -> &Sparse<B::S> {
        &self.f
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Diagonal of `K^k`.
    pub fn k_power_diagonal(&self, k: i64) -> Vec<B::S> {
        self.weights.iter().map(|w| self.backend.q_pow(w, k)).collect()
    }

    pub fn k_matrix(&self, k: i64) -> Dense<B::S> {
        Dense::diagonal(&self.k_power_diagonal(k), &self.backend.zero())
    }

    pub fn e_dense(&self) -> Dense<B::S> {
        self.e.to_dense(&self.backend.zero())
    }

    pub fn f_dense(&self) -> Dense<B::S> {
        self.f.to_dense(&self.backend.zero())
    }

    pub fn identity(&self) -> Dense<B::S> {
        Dense::identity(self.dim(), &self.backend.zero(), &self.backend.one())
    }

    /// For projectives, the `(row, column)` of the entry that carries the nilpotent
    /// coefficient: `(a_0, b_0)` on `P^+`, `(x_0, y_0)` on `P^-`.
    pub fn nilpotent_entry(&self) -> Option<(usize, usize)> {
        match self.kind {
            ModuleKind::Projective { alpha, t } => {
                let s = if alpha > 0 { t } else { self.backend.p() - t };
                let sc = sign_char(alpha);
                let (r, c) = if alpha > 0 { ("a0", "b0") } else { ("x0", "y0") };
                Some((
                    self.index_of(&format!("{r}({sc},{s})"))?,
                    self.index_of(&format!("{c}({sc},{s})"))?,
                ))
            }
            _ => None,
        }
    }

    /// The module endomorphism `φ`: `b_n ↦ a_n` on `P^+`, `y_k ↦ x_k` on `P^-`, zero elsewhere.
    pub fn nilpotent_map(&self) -> Option<Sparse<B::S>> {
        let ModuleKind::Projective { alpha, t } = self.kind else {
            return None;
        };
        let s = if alpha > 0 { t } else { self.backend.p() - t };
        let m = self.backend.p() - s;
        let sc = sign_char(alpha);
        let (from, to, len) = if alpha > 0 { ('b', 'a', s) } else { ('y', 'x', m) };
        let mut phi = Sparse::new(self.dim(), self.dim());
        for n in 0..len {
            let j = self.index_of(&format!("{from}{n}({sc},{s})"))?;
            let i = self.index_of(&format!("{to}{n}({sc},{s})"))?;
            phi.add_entry(i, j, self.backend.one());
        }
        Some(phi)
    }

    /// Whether a dense matrix commutes with `E`, `F` and `K` on this module.
    pub fn commutes_with_action(&self, z: &Dense<B::S>) -> bool {
        let tol = self.backend.tolerance().max(1e-9);
        let (e, f, k) = (self.e_dense(), self.f_dense(), self.k_matrix(1));
        [e, f, k].iter().all(|x| z.mul(x).approx_eq(&x.mul(z), tol))
    }

    /// Checks the defining relations of the algebra as matrix identities.
    pub fn check_relations(&self) -> RelationReport {
        let b = &self.backend;
        let tol = if b.is_exact() { 0.0 } else { 1e-10 };
        let zero = b.zero();
        let (e, f) = (self.e_dense(), self.f_dense());
        let (k, kinv) = (self.k_matrix(1), self.k_matrix(-1));
        let q2 = b.q_pow(&b.weight_from_i64(1), 2);
        let qm2 = b.q_pow(&b.weight_from_i64(1), -2);
        let mut checks = Vec::new();
        let mut push = |relation: &'static str, lhs: Dense<B::S>, rhs: Dense<B::S>| {
            let residual = lhs.sub(&rhs).max_abs();
            let passed = if tol == 0.0 { lhs.approx_eq(&rhs, 0.0) } else { residual <= tol };
            checks.push(RelationCheck { relation, passed, residual });
        };
        push("K E K^-1 = q^2 E", k.mul(&e).mul(&kinv), e.scale(&q2));
        push("K F K^-1 = q^-2 F", k.mul(&f).mul(&kinv), f.scale(&qm2));
        let cartan = Dense::diagonal(
            &self.weights.iter().map(|w| b.quantum_integer(w)).collect::<Vec<_>>(),
            &zero,
        );
        push("EF - FE = (K - K^-1)/(q - q^-1)", e.mul(&f).sub(&f.mul(&e)), cartan);
        let dim = self.dim();
        let zeros = Dense::zeros(dim, dim, &zero);
        let mut ep = self.identity();
        let mut fp = self.identity();
        for _ in 0..b.p() {
            ep = ep.mul(&e);
            fp = fp.mul(&f);
        }
        push("E^p = 0", ep, zeros.clone());
        push("F^p = 0", fp, zeros);
        if !matches!(self.kind, ModuleKind::XLambda | ModuleKind::YGlued { .. }) {
            push("K^2p = 1", self.k_matrix(2 * b.p() as i64), self.identity());
        }
        let pattern_ok = self.e.entries().all(|(i, j, _)| self.keys[i] == self.keys[j] + 2)
            && self.f.entries().all(|(i, j, _)| self.keys[i] == self.keys[j] - 2);
        checks.push(RelationCheck {
            relation: "E raises and F lowers weights by 2",
            passed: pattern_ok,
            residual: if pattern_ok { 0.0 } else { 1.0 },
        });
        RelationReport { module: self.name.clone(), checks }
    }

    /// Human-readable listing of basis labels, weights and the non-zero actions.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "module {} dim {}", self.name, self.dim());
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  {l} weight {}", self.backend.describe_weight(&self.weights[i]));
        }
        for (tag, mat) in [("E", &self.e), ("F", &self.f)] {
            for (i, j, v) in mat.entries() {
                let _ = writeln!(out, "  {tag} {} -> {} : {v}", self.labels[j], self.labels[i]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn ex(p: u32) -> Exact {
        Exact::new(p).unwrap()
    }

    #[test]
    fn trivial_module() {
        let m = build_irreducible(&ex(3), 1, 1).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.e().nnz() + m.f().nnz(), 0);
        assert!(m.k_power_diagonal(1)[0].is_one());
    }

    #[test]
    fn irreducible_actions() {
        let b = ex(3);
        let m = build_irreducible(&b, 1, 3).unwrap();
        // E|3,1> = [1][2]|3,0> = |3,0> since [2] = 1 at p = 3
        assert!(m.e().get(0, 1).unwrap().is_one());
        let b2 = ex(2);
        let m = build_irreducible(&b2, -1, 2).unwrap();
        let k = m.k_power_diagonal(1);
        let q = b2.field().q_pow(1);
        assert_eq!(k[0], -&q);
        assert_eq!(k[1], -&b2.field().q_pow(-1));
        assert!(build_irreducible(&b2, 1, 3).is_err());
        assert!(build_irreducible(&b2, 0, 1).is_err());
    }

    #[test]
    fn projective_actions() {
        let b = ex(2);
        let m = build_projective(&b, 1, 1).unwrap();
        assert_eq!(m.dim(), 4);
        let (x0, a0) = (m.index_of("x0(+,1)").unwrap(), m.index_of("a0(+,1)").unwrap());
        assert!(m.f().get(a0, x0).unwrap().is_one());
        let b3 = ex(3);
        let m = build_projective(&b3, 1, 1).unwrap();
        let (b0, x1) = (m.index_of("b0(+,1)").unwrap(), m.index_of("x1(+,1)").unwrap());
        assert!(m.e().get(x1, b0).unwrap().is_one());
        // P^-(2) at p = 3: E y_1 = -[1][1] y_0 + x_0
        let m = build_projective(&b3, -1, 2).unwrap();
        let (y0, y1, x0) = (
            m.index_of("y0(-,1)").unwrap(),
            m.index_of("y1(-,1)").unwrap(),
            m.index_of("x0(-,1)").unwrap(),
        );
        assert_eq!(*m.e().get(y0, y1).unwrap(), b3.from_i64(-1));
        assert!(m.e().get(x0, y1).unwrap().is_one());
        assert!(build_projective(&b3, 1, 3).is_err());
    }

    #[test]
    fn x_lambda_actions() {
        let n = Numeric::new(2, 128).unwrap();
        let m = build_x_lambda(&n, &n.from_i64(1));
        assert!(m.e().get(0, 1).is_none());
        let n3 = Numeric::new(3, 128).unwrap();
        let lam = n3.scalar(0.37, 0.0);
        let m = build_x_lambda(&n3, &lam);
        let k0 = m.k_power_diagonal(1)[0].to_c64();
        let want = num_complex::Complex64::from_polar(1.0, std::f64::consts::PI * (0.37 - 1.0) / 3.0);
        assert!((k0 - want).norm() < 1e-12);
    }

    #[test]
    fn y_glued_actions() {
        let n = Numeric::new(2, 128).unwrap();
        let m = build_y_glued(&n, &n.scalar(0.5, 0.0), 1).unwrap();
        let (c0, d0) = (m.index_of("c0").unwrap(), m.index_of("d0").unwrap());
        assert!(m.e().get(c0, d0).unwrap().approx_eq(&n.one(), 0.0));
        let n3 = Numeric::new(3, 128).unwrap();
        let m = build_y_glued(&n3, &n3.scalar(0.5, 0.0), 2).unwrap();
        // n = 2 > p - s: no gluing term
        let d2 = m.index_of("d2").unwrap();
        assert_eq!(m.e().column(d2).len(), 1);
        let c2 = m.index_of("c2").unwrap();
        assert!(m.f().column(c2).is_empty());
    }

    #[test]
    fn relations_hold() {
        for p in 2..=5 {
            let b = ex(p);
            for s in 1..=p {
                for alpha in [1, -1] {
                    let m = build_irreducible(&b, alpha, s).unwrap();
                    assert!(m.check_relations().passed(), "{}", m.name());
                    if s < p {
                        let m = build_projective(&b, alpha, s).unwrap();
                        let r = m.check_relations();
                        assert!(r.passed(), "{r:?}");
                    }
                }
            }
        }
        let n = Numeric::new(3, 128).unwrap();
        let m = build_y_glued(&n, &n.scalar(0.37, 0.0), 2).unwrap();
        assert!(m.check_relations().passed());
    }

    #[test]
    fn nilpotent_maps_commute() {
        for p in 2..=5 {
            let b = ex(p);
            for t in 1..p {
                for alpha in [1, -1] {
                    let m = build_projective(&b, alpha, t).unwrap();
                    let phi = m.nilpotent_map().unwrap().to_dense(&b.zero());
                    assert!(m.commutes_with_action(&phi), "{}", m.name());
                    let (r, c) = m.nilpotent_entry().unwrap();
                    assert!(phi.get(r, c).is_one());
                }
            }
        }
    }
}
