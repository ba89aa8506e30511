//! Exact arithmetic in the cyclotomic field `Q(ζ)` with `ζ = exp(πi / 2p)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(4p)-1}`, reduced modulo
//! the `4p`-th cyclotomic polynomial after every operation, so the coefficient
//! vector is a canonical form and equality is structural. Values with integral
//! coefficients that fit in an `i64` take a fast path; everything else falls
//! back to arbitrary-precision rationals with a shared denominator.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::complex::ComplexScalar;
use crate::error::{Error, Result};

type SmallCoeffs = SmallVec<[i64; 16]>;

/// Largest root-of-unity parameter accepted by the field registry.
pub const MAX_P: u32 = 64;

/// The field `Q(ζ_{4p})` together with its reduction tables.
pub struct CyclotomicField {
    p: u32,
    order: usize,
    degree: usize,
    modulus: Vec<i64>,
    /// `powers[j]` is `ζ^j` reduced to the power basis, `0 <= j < 4p`.
    powers: Vec<SmallCoeffs>,
    /// Exponents `k` with `gcd(k, 4p) = 1`, `k != 1`: the non-trivial Galois automorphisms.
    units: Vec<usize>,
    tables: OnceLock<QuantumTables>,
}

struct QuantumTables {
    factorials: Vec<CyclotomicNumber>,
    r_coeffs: Vec<CyclotomicNumber>,
    r_inverse_coeffs: Vec<CyclotomicNumber>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CyclotomicField")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .finish()
    }
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n > 0);
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            poly = exact_div_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nq = num.len() - dd;
    let mut quot = vec![0i64; nq];
    for k in (0..nq).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &di) in den.iter().enumerate() {
                rem[k + i] -= c * di;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

impl CyclotomicField {
    /// Returns the shared field for parameter `p` (built once, then cached).
    pub fn get(p: u32) -> Result<&'static CyclotomicField> {
        if p < 2 {
            return Err(Error::InvalidParameter(format!("p must be at least 2, got {p}")));
        }
        if p > MAX_P {
            return Err(Error::InvalidParameter(format!("p must be at most {MAX_P}, got {p}")));
        }
        static REGISTRY: OnceLock<Mutex<HashMap<u32, &'static CyclotomicField>>> = OnceLock::new();
        let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = registry.lock().unwrap_or_else(|e| e.into_inner());
        Ok(*guard
            .entry(p)
            .or_insert_with(|| Box::leak(Box::new(CyclotomicField::build(p)))))
    }

    fn build(p: u32) -> Self {
        let order = 4 * p as usize;
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order);
        let mut cur: SmallCoeffs = SmallVec::from_elem(0, degree);
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by ζ and reduce the overflow term
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * modulus[i];
                }
            }
        }
        let units = (2..order).filter(|k| k.gcd(&order) == 1).collect();
        CyclotomicField { p, order, degree, modulus, powers, units, tables: OnceLock::new() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Dimension of the field over `Q`, i.e. `φ(4p)`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The cyclotomic modulus, lowest degree first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub fn zero(&'static self) -> CyclotomicNumber {
        CyclotomicNumber { field: self, repr: Repr::Small(SmallVec::from_elem(0, self.degree)) }
    }

    pub fn one(&'static self) -> CyclotomicNumber {
        self.from_i64(1)
    }

    pub fn from_i64(&'static self, v: i64) -> CyclotomicNumber {
        let mut c: SmallCoeffs = SmallVec::from_elem(0, self.degree);
        c[0] = v;
        CyclotomicNumber { field: self, repr: Repr::Small(c) }
    }

    pub fn from_rational(&'static self, v: &BigRational) -> CyclotomicNumber {
        let mut num = vec![BigInt::zero(); self.degree];
        num[0] = v.numer().clone();
        CyclotomicNumber::normalized(self, num, v.denom().clone())
    }

    /// `ζ^j` for any integer `j`.
    pub fn zeta_pow(&'static self, j: i64) -> CyclotomicNumber {
        let idx = j.rem_euclid(self.order as i64) as usize;
        CyclotomicNumber { field: self, repr: Repr::Small(self.powers[idx].clone()) }
    }

    /// `q^j = ζ^{2j}`.
    pub fn q_pow(&'static self, j: i64) -> CyclotomicNumber {
        self.zeta_pow(2 * j)
    }

    /// The quantum integer `[n] = (q^n - q^{-n}) / (q - q^{-1})`, computed division-free.
    pub fn quantum_integer(&'static self, n: i64) -> CyclotomicNumber {
        if n == 0 {
            return self.zero();
        }
        if n < 0 {
            return -self.quantum_integer(-n);
        }
        let mut acc = self.zero();
        for k in 0..n {
            acc = &acc + &self.q_pow(n - 1 - 2 * k);
        }
        acc
    }

    fn tables(&'static self) -> &'static QuantumTables {
        self.tables.get_or_init(|| {
            let p = self.p as usize;
            let mut factorials = Vec::with_capacity(p);
            let mut acc = self.one();
            factorials.push(acc.clone());
            for n in 1..p {
                acc = &acc * &self.quantum_integer(n as i64);
                factorials.push(acc.clone());
            }
            let q_diff = &self.q_pow(1) - &self.q_pow(-1);
            let mut r_coeffs = Vec::with_capacity(p);
            let mut r_inverse_coeffs = Vec::with_capacity(p);
            let mut diff_pow = self.one();
            for (n, fact) in factorials.iter().enumerate() {
                let inv_fact = fact.inverse().expect("[n]! is non-zero below p");
                let tri = (n * n.saturating_sub(1) / 2) as i64;
                let base = &diff_pow * &inv_fact;
                r_coeffs.push(&base * &self.q_pow(tri));
                let signed = if n % 2 == 0 { base.clone() } else { -base.clone() };
                r_inverse_coeffs.push(&signed * &self.q_pow(-tri));
                diff_pow = &diff_pow * &q_diff;
            }
            QuantumTables { factorials, r_coeffs, r_inverse_coeffs }
        })
    }

    /// `[n]!` for `0 <= n`. Returns zero once `n >= p`; callers must not invert it.
    pub fn quantum_factorial(&'static self, n: u32) -> CyclotomicNumber {
        if n >= self.p {
            return self.zero();
        }
        self.tables().factorials[n as usize].clone()
    }

    /// `(q - q^{-1})^n q^{n(n-1)/2} / [n]!`, the coefficient of `E^n ⊗ F^n` in the R-matrix.
    pub fn r_coefficient(&'static self, n: usize) -> &'static CyclotomicNumber {
        &self.tables().r_coeffs[n]
    }

    /// Coefficient of `E^n ⊗ F^n` in the inverse quasi-R-matrix.
    pub fn r_inverse_coefficient(&'static self, n: usize) -> &'static CyclotomicNumber {
        &self.tables().r_inverse_coeffs[n]
    }

    /// Parses the canonical text form produced by `Display`.
    pub fn parse(&'static self, text: &str) -> Result<CyclotomicNumber> {
        let text = text.trim();
        if text == "0" {
            return Ok(self.zero());
        }
        let mut acc = self.zero();
        for term in text.split(" + ") {
            let term = term.trim();
            let (coeff, power) = match term.split_once('*') {
                Some((c, z)) => (c.trim(), parse_zeta(z.trim())?),
                None if term.starts_with('z') => ("1", parse_zeta(term)?),
                None => (term, 0),
            };
            let c = parse_rational(coeff)?;
            acc = &acc + &(&self.from_rational(&c) * &self.zeta_pow(power));
        }
        Ok(acc)
    }
}

fn parse_zeta(z: &str) -> Result<i64> {
    let rest = z
        .strip_prefix("z^")
        .ok_or_else(|| Error::Parse(format!("expected z^<int>, got {z:?}")))?;
    rest.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent {rest:?}")))
}

fn parse_rational(c: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {c:?}"));
    match c.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(c).map_err(|_| bad())?)),
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    /// Integral coefficients, denominator one.
    Small(SmallCoeffs),
    /// `num / den` with `den > 0` and `gcd(num, den) = 1`; never representable as `Small`.
    Big(Box<BigRepr>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct BigRepr {
    num: Vec<BigInt>,
    den: BigInt,
}

/// An exact element of `Q(ζ_{4p})`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: &'static CyclotomicField,
    repr: Repr,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.p == other.field.p && self.repr == other.repr
    }
}

impl Eq for CyclotomicNumber {}

impl std::hash::Hash for CyclotomicNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.repr.hash(state);
    }
}

/// `ζ^j` in canonical form for the field of parameter `p`.
pub fn root_power(p: u32, j: i64) -> Result<CyclotomicNumber> {
    Ok(CyclotomicField::get(p)?.zeta_pow(j))
}

/// The quantum integer `[n]` at `q = exp(πi/p)`.
pub fn quantum_integer(p: u32, n: i64) -> Result<CyclotomicNumber> {
    Ok(CyclotomicField::get(p)?.quantum_integer(n))
}

/// `[n]!`. For `n >= p` the value is zero (a zero divisor of the R-matrix
/// denominators); the caller must not invert it.
pub fn quantum_factorial(p: u32, n: u32) -> Result<CyclotomicNumber> {
    Ok(CyclotomicField::get(p)?.quantum_factorial(n))
}

impl CyclotomicNumber {
    fn normalized(field: &'static CyclotomicField, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den = &den / &g;
        }
        if den.is_one() {
            let small: Option<SmallCoeffs> = num.iter().map(|c| c.to_i64()).collect();
            if let Some(small) = small {
                return CyclotomicNumber { field, repr: Repr::Small(small) };
            }
        }
        CyclotomicNumber { field, repr: Repr::Big(Box::new(BigRepr { num, den })) }
    }

    fn from_small(field: &'static CyclotomicField, c: SmallCoeffs) -> Self {
        CyclotomicNumber { field, repr: Repr::Small(c) }
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p
    }

    fn to_big(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small(c) => (c.iter().map(|&v| BigInt::from(v)).collect(), BigInt::one()),
            Repr::Big(b) => (b.num.clone(), b.den.clone()),
        }
    }

    /// Canonical coefficients in the power basis `ζ^0 … ζ^{d-1}`.
    pub fn coefficients(&self) -> Vec<BigRational> {
        let (num, den) = self.to_big();
        num.into_iter().map(|n| BigRational::new(n, den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small(c) => c.iter().all(|&v| v == 0),
            Repr::Big(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small(c) => c[0] == 1 && c[1..].iter().all(|&v| v == 0),
            Repr::Big(_) => false,
        }
    }

    /// Returns the value as a rational number when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let coeffs = self.coefficients();
        if coeffs[1..].iter().all(Zero::is_zero) {
            Some(coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.field.p, other.field.p, "cyclotomic operands from different fields");
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        self.check_field(other);
        if let (Repr::Small(a), Repr::Small(b)) = (&self.repr, &other.repr) {
            let sum: Option<SmallCoeffs> = a
                .iter()
                .zip(b.iter())
                .map(|(&x, &y)| if negate_other { x.checked_sub(y) } else { x.checked_add(y) })
                .collect();
            if let Some(sum) = sum {
                return Self::from_small(self.field, sum);
            }
        }
        let (an, ad) = self.to_big();
        let (bn, bd) = other.to_big();
        let num = an
            .iter()
            .zip(bn.iter())
            .map(|(x, y)| {
                let l = x * &bd;
                let r = y * &ad;
                if negate_other { l - r } else { l + r }
            })
            .collect();
        Self::normalized(self.field, num, ad * bd)
    }

    fn mul_small(field: &CyclotomicField, a: &[i64], b: &[i64]) -> Option<SmallCoeffs> {
        let d = field.degree;
        let mut acc: SmallVec<[i128; 32]> = SmallVec::from_elem(0, 2 * d - 1);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    acc[i + j] = acc[i + j].checked_add(x as i128 * y as i128)?;
                }
            }
        }
        for k in d..2 * d - 1 {
            let c = acc[k];
            if c == 0 {
                continue;
            }
            for (t, &pw) in field.powers[k].iter().enumerate() {
                if pw != 0 {
                    acc[t] = acc[t].checked_add(c.checked_mul(pw as i128)?)?;
                }
            }
        }
        acc[..d].iter().map(|&v| i64::try_from(v).ok()).collect()
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.check_field(other);
        if let (Repr::Small(a), Repr::Small(b)) = (&self.repr, &other.repr) {
            if let Some(c) = Self::mul_small(self.field, a, b) {
                return Self::from_small(self.field, c);
            }
        }
        let d = self.field.degree;
        let (an, ad) = self.to_big();
        let (bn, bd) = other.to_big();
        let mut acc = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in an.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bn.iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let mut num: Vec<BigInt> = acc[..d].to_vec();
        for (k, c) in acc.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (t, &pw) in self.field.powers[k].iter().enumerate() {
                if pw != 0 {
                    num[t] += c * pw;
                }
            }
        }
        Self::normalized(self.field, num, ad * bd)
    }

    /// `self += a * b`, staying on the machine-integer path whenever possible.
    pub fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if let (Repr::Small(x), Repr::Small(y)) = (&a.repr, &b.repr) {
            if let Some(prod) = Self::mul_small(self.field, x, y) {
                if let Repr::Small(acc) = &mut self.repr {
                    let mut ok = true;
                    let mut out = acc.clone();
                    for (o, v) in out.iter_mut().zip(prod.iter()) {
                        match o.checked_add(*v) {
                            Some(s) => *o = s,
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok {
                        *acc = out;
                        return;
                    }
                }
                *self = self.add_impl(&Self::from_small(self.field, prod), false);
                return;
            }
        }
        *self = self.add_impl(&a.mul_impl(b), false);
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k`.
    pub fn galois(&self, k: usize) -> Self {
        let (num, den) = self.to_big();
        let order = self.field.order;
        let mut out = vec![BigInt::zero(); self.field.degree];
        for (j, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, &pw) in self.field.powers[(j * k) % order].iter().enumerate() {
                if pw != 0 {
                    out[t] += c * pw;
                }
            }
        }
        Self::normalized(self.field, out, den)
    }

    /// Multiplicative inverse through the product of the non-trivial Galois conjugates.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut conj = self.field.one();
        for &k in &self.field.units {
            conj = &conj * &self.galois(k);
        }
        let norm = (self * &conj)
            .as_rational()
            .expect("field norm is rational");
        Ok(&conj * &self.field.from_rational(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Numeric embedding `ζ ↦ exp(πi / 2p)` at the requested binary precision.
    pub fn to_complex(&self, precision: usize) -> ComplexScalar {
        let (num, den) = self.to_big();
        let den = ComplexScalar::from_bigint(&den, precision);
        let mut acc = ComplexScalar::zero(precision);
        for (j, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = ComplexScalar::zeta_power(self.field.p, j as i64, precision)
                .scale_real(&ComplexScalar::from_bigint(c, precision).re().clone());
            acc = &acc + &term;
        }
        acc.div_real(den.re())
    }

    /// Double-precision embedding, for display and quick comparisons.
    pub fn to_c64(&self) -> Complex64 {
        let (num, den) = self.to_big();
        let den = den.to_f64().unwrap_or(f64::NAN);
        let step = std::f64::consts::PI / (2.0 * self.field.p as f64);
        num.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, step * j as f64))
            .sum()
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coefficients();
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("{c}*z^{j}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[p={}] {}", self.field.p, self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a CyclotomicNumber> for &'a CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
                $body(self, rhs)
            }
        }
        impl $trait for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                $body(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CyclotomicNumber, b: &CyclotomicNumber| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &CyclotomicNumber, b: &CyclotomicNumber| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &CyclotomicNumber, b: &CyclotomicNumber| a.mul_impl(b));

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.field.zero().add_impl(self, true)
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> &'static CyclotomicField {
        CyclotomicField::get(p).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(20), vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
        assert_eq!(f(7).degree(), 12);
    }

    #[test]
    fn root_power_examples() {
        assert!(root_power(3, 0).unwrap().is_one());
        assert_eq!(root_power(2, 4).unwrap(), f(2).from_i64(-1));
        // q^p = -1
        assert_eq!(root_power(3, 6).unwrap(), f(3).from_i64(-1));
        assert_eq!(root_power(5, 20).unwrap(), f(5).one());
        assert_eq!(root_power(5, -1).unwrap(), root_power(5, 19).unwrap());
        assert!(matches!(root_power(1, 0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn quantum_integer_examples() {
        assert!(quantum_integer(5, 1).unwrap().is_one());
        assert!(quantum_integer(3, 3).unwrap().is_zero());
        assert!(quantum_integer(3, 2).unwrap().is_one());
        for p in 2..8 {
            for n in 0..=p as i64 {
                assert_eq!(
                    quantum_integer(p, n).unwrap(),
                    quantum_integer(p, p as i64 - n).unwrap(),
                    "p={p} n={n}"
                );
            }
        }
    }

    #[test]
    fn quantum_factorial_examples() {
        assert!(quantum_factorial(4, 0).unwrap().is_one());
        assert!(quantum_factorial(3, 2).unwrap().is_one());
        // [2]! at p = 4 is q + q^{-1} = sqrt 2
        let two = quantum_factorial(4, 2).unwrap();
        assert_eq!(two, &f(4).q_pow(1) + &f(4).q_pow(-1));
        assert_eq!(&two * &two, f(4).from_i64(2));
        assert!(quantum_factorial(4, 4).unwrap().is_zero());
    }

    #[test]
    fn inverse_examples() {
        let one = f(5).one();
        assert_eq!(one.inverse().unwrap(), one);
        let q = f(5).q_pow(1);
        assert_eq!(q.inverse().unwrap(), f(5).zeta_pow(4 * 5 - 2));
        let two = quantum_integer(4, 2).unwrap();
        let inv = two.inverse().unwrap();
        assert!((&two * &inv).is_one());
        // sqrt(2)/2
        assert_eq!(inv, &two * &f(4).from_rational(&BigRational::new(1.into(), 2.into())));
        assert_eq!(f(3).zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn embedding_examples() {
        let c = f(2).one().to_c64();
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let z = f(2).zeta_pow(1).to_complex(128).to_c64();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((z - Complex64::new(h, h)).norm() < 1e-15);
        let pi = std::f64::consts::PI;
        let three = quantum_integer(7, 3).unwrap().to_complex(128).to_c64();
        assert!((three.re - (3.0 * pi / 7.0).sin() / (pi / 7.0).sin()).abs() < 1e-12);
        assert!(three.im.abs() < 1e-12);
    }

    #[test]
    fn big_path_matches_small_path() {
        let x = f(3).from_i64(i64::MAX / 3);
        let y = &x * &x;
        let z = &y - &y;
        assert!(z.is_zero());
        let w = &(&y * &f(3).from_i64(2)) - &y;
        assert_eq!(w, y);
        let mut acc = f(3).from_i64(i64::MAX - 1);
        acc.mul_add_assign(&f(3).one(), &f(3).from_i64(5));
        assert_eq!(&acc - &f(3).from_i64(5), f(3).from_i64(i64::MAX - 1));
    }

    #[test]
    fn text_roundtrip() {
        let x = &f(4).zeta_pow(3) * &quantum_integer(4, 2).unwrap().inverse().unwrap();
        let text = x.to_string();
        assert_eq!(f(4).parse(&text).unwrap(), x);
        assert_eq!(f(4).parse("0").unwrap(), f(4).zero());
        assert_eq!(f(4).parse("-1/2*z^0").unwrap().to_string(), "-1/2*z^0");
        assert!(f(4).parse("1*q^2").is_err());
    }
}
