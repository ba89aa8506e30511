//! Scalars and the two evaluation backends.
//!
//! [`Exact`] works in the cyclotomic field `Q(ζ)`, `ζ = exp(πi/2p)`, with integral weights.
//! [`Numeric`] works with arbitrary-precision complex numbers and allows complex weights,
//! which is what the non-integral modules `X(λ)` and `Y(λ, s)` need.

pub mod complex;
pub mod cyclotomic;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

pub use complex::{ComplexScalar, DEFAULT_PRECISION};
pub use cyclotomic::{quantum_factorial, quantum_integer, root_power, CyclotomicField, CyclotomicNumber};

use crate::error::{Error, Result};

/// Ring operations used by the linear algebra.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + Send + Sync {
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_add_assign(&mut self, a: &Self, b: &Self);
    fn is_zero(&self) -> bool;
    fn try_inverse(&self) -> Result<Self>;
    fn to_c64(&self) -> Complex64;
    /// Exact equality for field elements; relative tolerance for complex ones.
    fn approx_eq(&self, o: &Self, tol: f64) -> bool;
    /// Canonical text, only for exact scalars.
    fn exact_text(&self) -> Option<String>;
}

impl Scalar for CyclotomicNumber {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        CyclotomicNumber::mul_add_assign(self, a, b)
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
    fn try_inverse(&self) -> Result<Self> {
        self.inverse()
    }
    fn to_c64(&self) -> Complex64 {
        CyclotomicNumber::to_c64(self)
    }
    fn approx_eq(&self, o: &Self, _tol: f64) -> bool {
        self == o
    }
    fn exact_text(&self) -> Option<String> {
        Some(self.to_string())
    }
}

impl Scalar for ComplexScalar {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        ComplexScalar::mul_add_assign(self, a, b)
    }
    fn is_zero(&self) -> bool {
        ComplexScalar::is_zero(self)
    }
    fn try_inverse(&self) -> Result<Self> {
        self.inverse()
    }
    fn to_c64(&self) -> Complex64 {
        ComplexScalar::to_c64(self)
    }
    fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        let d = (self - o).abs_f64();
        d <= tol * self.abs_f64().max(o.abs_f64()).max(1.0)
    }
    fn exact_text(&self) -> Option<String> {
        None
    }
}

/// Everything the representation and braiding code needs from a number system.
pub trait Backend: Clone + fmt::Debug + Send + Sync {
    type S: Scalar;
    /// A weight, i.e. an eigenvalue label of `H`.
    type Weight: Clone + fmt::Debug + Send + Sync;

    fn p(&self) -> u32;
    fn is_exact(&self) -> bool;
    fn zero(&self) -> Self::S;
    fn one(&self) -> Self::S;
    fn from_i64(&self, v: i64) -> Self::S;
    fn weight_from_i64(&self, w: i64) -> Self::Weight;
    fn shift_weight(&self, w: &Self::Weight, k: i64) -> Self::Weight;
    fn neg_weight(&self, w: &Self::Weight) -> Self::Weight;
    /// `q^{k w}`.
    fn q_pow(&self, w: &Self::Weight, k: i64) -> Self::S;
    /// `ζ^{a b}`, the diagonal factor of the R-matrix.
    fn zeta_pow_product(&self, a: &Self::Weight, b: &Self::Weight) -> Self::S;
    /// `[w] = (q^w - q^{-w}) / (q - q^{-1})`.
    fn quantum_integer(&self, w: &Self::Weight) -> Self::S;
    fn r_coefficient(&self, n: usize) -> Self::S;
    fn r_inverse_coefficient(&self, n: usize) -> Self::S;
    fn invert(&self, x: &Self::S) -> Result<Self::S>;
    fn describe_weight(&self, w: &Self::Weight) -> String;
    /// Whether two backend values produce interchangeable scalars.
    fn compatible(&self, other: &Self) -> bool;
    /// Relative tolerance for internal consistency checks.
    fn tolerance(&self) -> f64;
}

/// Exact arithmetic in `Q(ζ_{4p})` with integer weights.
#[derive(Clone, Copy)]
pub struct Exact {
    field: &'static CyclotomicField,
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Exact(p={})", self.field.p())
    }
}

impl Exact {
    pub fn new(p: u32) -> Result<Self> {
        Ok(Exact { field: CyclotomicField::get(p)? })
    }

    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }
}

impl Backend for Exact {
    type S = CyclotomicNumber;
    type Weight = i64;

    fn p(&self) -> u32 {
        self.field.p()
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn zero(&self) -> CyclotomicNumber {
        self.field.zero()
    }
    fn one(&self) -> CyclotomicNumber {
        self.field.one()
    }
    fn from_i64(&self, v: i64) -> CyclotomicNumber {
        self.field.from_i64(v)
    }
    fn weight_from_i64(&self, w: i64) -> i64 {
        w
    }
    fn shift_weight(&self, w: &i64, k: i64) -> i64 {
        w + k
    }
    fn neg_weight(&self, w: &i64) -> i64 {
        -w
    }
    fn q_pow(&self, w: &i64, k: i64) -> CyclotomicNumber {
        self.field.q_pow(w * k)
    }
    fn zeta_pow_product(&self, a: &i64, b: &i64) -> CyclotomicNumber {
        let order = 4 * self.field.p() as i64;
        self.field.zeta_pow((a.rem_euclid(order) * b.rem_euclid(order)) % order)
    }
    fn quantum_integer(&self, w: &i64) -> CyclotomicNumber {
        self.field.quantum_integer(*w)
    }
    fn r_coefficient(&self, n: usize) -> CyclotomicNumber {
        self.field.r_coefficient(n).clone()
    }
    fn r_inverse_coefficient(&self, n: usize) -> CyclotomicNumber {
        self.field.r_inverse_coefficient(n).clone()
    }
    fn invert(&self, x: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        x.inverse()
    }
    fn describe_weight(&self, w: &i64) -> String {
        w.to_string()
    }
    fn compatible(&self, other: &Self) -> bool {
        self.p() == other.p()
    }
    fn tolerance(&self) -> f64 {
        0.0
    }
}

struct NumericInner {
    p: u32,
    prec: usize,
    pi_over_p: astro_float::BigFloat,
    inv_q_diff: ComplexScalar,
    r_coeffs: Vec<ComplexScalar>,
    r_inverse_coeffs: Vec<ComplexScalar>,
}

/// Arbitrary-precision complex arithmetic with complex weights.
#[derive(Clone)]
pub struct Numeric {
    inner: Arc<NumericInner>,
}

impl fmt::Debug for Numeric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Numeric(p={}, bits={})", self.inner.p, self.inner.prec)
    }
}

impl Numeric {
    pub fn new(p: u32, precision: usize) -> Result<Self> {
        if precision < 64 {
            return Err(Error::InvalidParameter(format!(
                "precision must be at least 64 bits, got {precision}"
            )));
        }
        let field = CyclotomicField::get(p)?;
        let rm = astro_float::RoundingMode::ToEven;
        let pi_over_p = ComplexScalar::pi(precision).div(
            &astro_float::BigFloat::from_i64(p as i64, precision),
            precision,
            rm,
        );
        let q_diff = &field.q_pow(1) - &field.q_pow(-1);
        let inv_q_diff = q_diff.inverse()?.to_complex(precision);
        let r_coeffs = (0..p as usize).map(|n| field.r_coefficient(n).to_complex(precision)).collect();
        let r_inverse_coeffs =
            (0..p as usize).map(|n| field.r_inverse_coefficient(n).to_complex(precision)).collect();
        Ok(Numeric {
            inner: Arc::new(NumericInner { p, prec: precision, pi_over_p, inv_q_diff, r_coeffs, r_inverse_coeffs }),
        })
    }

    pub fn precision(&self) -> usize {
        self.inner.prec
    }

    /// `exp(iπ z k / (d p))` for complex `z`.
    pub fn exp_i_pi(&self, z: &ComplexScalar, k: i64, d: i64) -> ComplexScalar {
        let prec = self.inner.prec;
        let rm = astro_float::RoundingMode::ToEven;
        let theta = self.inner.pi_over_p.mul(&astro_float::BigFloat::from_i64(k, prec), prec, rm).div(
            &astro_float::BigFloat::from_i64(d, prec),
            prec,
            rm,
        );
        let arg = ComplexScalar::new(
            theta.mul(z.im(), prec, rm).neg(),
            theta.mul(z.re(), prec, rm),
            prec,
        );
        arg.exp()
    }

    pub fn scalar(&self, re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::from_f64(re, im, self.inner.prec)
    }

    /// Embeds an exact value at this backend's precision.
    pub fn embed(&self, x: &CyclotomicNumber) -> ComplexScalar {
        x.to_complex(self.inner.prec)
    }
}

impl Backend for Numeric {
    type S = ComplexScalar;
    type Weight = ComplexScalar;

    fn p(&self) -> u32 {
        self.inner.p
    }
    fn is_exact(&self) -> bool {
        false
    }
    fn zero(&self) -> ComplexScalar {
        ComplexScalar::zero(self.inner.prec)
    }
    fn one(&self) -> ComplexScalar {
        ComplexScalar::one(self.inner.prec)
    }
    fn from_i64(&self, v: i64) -> ComplexScalar {
        ComplexScalar::from_i64(v, self.inner.prec)
    }
    fn weight_from_i64(&self, w: i64) -> ComplexScalar {
        self.from_i64(w)
    }
    fn shift_weight(&self, w: &ComplexScalar, k: i64) -> ComplexScalar {
        w + &self.from_i64(k)
    }
    fn neg_weight(&self, w: &ComplexScalar) -> ComplexScalar {
        -w
    }
    fn q_pow(&self, w: &ComplexScalar, k: i64) -> ComplexScalar {
        self.exp_i_pi(w, k, 1)
    }
    fn zeta_pow_product(&self, a: &ComplexScalar, b: &ComplexScalar) -> ComplexScalar {
        self.exp_i_pi(&(a * b), 1, 2)
    }
    fn quantum_integer(&self, w: &ComplexScalar) -> ComplexScalar {
        &(&self.q_pow(w, 1) - &self.q_pow(w, -1)) * &self.inner.inv_q_diff
    }
    fn r_coefficient(&self, n: usize) -> ComplexScalar {
        self.inner.r_coeffs[n].clone()
    }
    fn r_inverse_coefficient(&self, n: usize) -> ComplexScalar {
        self.inner.r_inverse_coeffs[n].clone()
    }
    fn invert(&self, x: &ComplexScalar) -> Result<ComplexScalar> {
        x.inverse()
    }
    fn describe_weight(&self, w: &ComplexScalar) -> String {
        let z = w.to_c64();
        if z.im == 0.0 {
            format!("{}", z.re)
        } else {
            format!("{}{:+}i", z.re, z.im)
        }
    }
    fn compatible(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.prec == other.inner.prec
    }
    fn tolerance(&self) -> f64 {
        // leave ~20 bits of headroom for cancellation in long braid words
        2f64.powi(-(self.inner.prec as i32) + 20).max(1e-300)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_matches_exact_embedding() {
        for p in 2..7 {
            let e = Exact::new(p).unwrap();
            let n = Numeric::new(p, 128).unwrap();
            for w in -6..7 {
                let exact = e.quantum_integer(&w).to_complex(128);
                let num = n.quantum_integer(&n.weight_from_i64(w));
                assert!((&exact - &num).abs_f64() < 1e-30, "p={p} w={w}");
                for k in -3..4 {
                    let a = e.zeta_pow_product(&w, &k).to_complex(128);
                    let b = n.zeta_pow_product(&n.weight_from_i64(w), &n.weight_from_i64(k));
                    assert!((&a - &b).abs_f64() < 1e-30);
                }
            }
        }
    }

    #[test]
    fn r_coefficients_invert_pairwise() {
        // Σ_k c_k c'_{n-k} q^{…} is not a simple identity, but c_0 = c'_0 = 1 and c_1 = -c'_1.
        let e = Exact::new(4).unwrap();
        assert!(e.r_coefficient(0).is_one());
        assert!(e.r_inverse_coefficient(0).is_one());
        assert_eq!(e.r_coefficient(1), -e.r_inverse_coefficient(1));
    }

    #[test]
    fn bad_parameters() {
        assert!(Exact::new(1).is_err());
        assert!(Numeric::new(3, 16).is_err());
    }
}
