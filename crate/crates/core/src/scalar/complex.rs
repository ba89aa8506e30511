//! Arbitrary-precision complex numbers on top of `astro-float`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: usize = 128;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
    static ZETA_CACHE: RefCell<HashMap<(u32, usize), Vec<ComplexScalar>>> = RefCell::new(HashMap::new());
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

fn negf(x: &BigFloat) -> BigFloat {
    let mut r = x.clone();
    r.inv_sign();
    r
}

/// Converts a `BigFloat` to the nearest-ish `f64` (truncating below 128 bits).
pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    match x.as_raw_parts() {
        Some((m, _, s, e, _)) => {
            let top = m[m.len() - 1] as f64;
            let next = if m.len() > 1 { m[m.len() - 2] as f64 } else { 0.0 };
            let two64 = 18446744073709551616.0_f64;
            let mant = (top + next / two64) / two64;
            let v = mant * 2f64.powi(e);
            if s == Sign::Neg { -v } else { v }
        }
        None => f64::NAN,
    }
}

/// A complex number `re + i·im` with a fixed binary working precision.
#[derive(Clone)]
pub struct ComplexScalar {
    re: BigFloat,
    im: BigFloat,
    prec: usize,
}

impl ComplexScalar {
    pub fn new(re: BigFloat, im: BigFloat, precision: usize) -> Self {
        ComplexScalar { re, im, prec: precision }
    }

    pub fn zero(precision: usize) -> Self {
        Self::from_f64(0.0, 0.0, precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::from_f64(1.0, 0.0, precision)
    }

    pub fn i(precision: usize) -> Self {
        Self::from_f64(0.0, 1.0, precision)
    }

    pub fn from_f64(re: f64, im: f64, precision: usize) -> Self {
        ComplexScalar {
            re: BigFloat::from_f64(re, precision),
            im: BigFloat::from_f64(im, precision),
            prec: precision,
        }
    }

    pub fn from_c64(z: Complex64, precision: usize) -> Self {
        Self::from_f64(z.re, z.im, precision)
    }

    pub fn from_i64(v: i64, precision: usize) -> Self {
        ComplexScalar {
            re: BigFloat::from_i64(v, precision),
            im: BigFloat::from_f64(0.0, precision),
            prec: precision,
        }
    }

    pub fn from_bigint(v: &BigInt, precision: usize) -> Self {
        let re = match i64::try_from(v) {
            Ok(small) => BigFloat::from_i64(small, precision),
            Err(_) => with_consts(|cc| BigFloat::parse(&v.to_string(), Radix::Dec, precision, RM, cc)),
        };
        ComplexScalar { re, im: BigFloat::from_f64(0.0, precision), prec: precision }
    }

    /// Parses decimal real and imaginary parts, e.g. `("0.5", "-1e-3")`.
    pub fn from_decimal(re: &str, im: &str, precision: usize) -> Result<Self> {
        let parse = |s: &str| {
            let v = with_consts(|cc| BigFloat::parse(s.trim(), Radix::Dec, precision, RM, cc));
            if v.is_nan() {
                Err(Error::Parse(format!("bad decimal {s:?}")))
            } else {
                Ok(v)
            }
        };
        Ok(ComplexScalar { re: parse(re)?, im: parse(im)?, prec: precision })
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// `π` at the given precision.
    pub fn pi(precision: usize) -> BigFloat {
        with_consts(|cc| cc.pi(precision, RM))
    }

    /// `exp(iθ)` for real `θ`.
    pub fn cis(theta: &BigFloat, precision: usize) -> Self {
        let (c, s) = with_consts(|cc| (theta.cos(precision, RM, cc), theta.sin(precision, RM, cc)));
        ComplexScalar { re: c, im: s, prec: precision }
    }

    /// `exp(self)`.
    pub fn exp(&self) -> Self {
        let p = self.prec;
        let mag = with_consts(|cc| self.re.exp(p, RM, cc));
        Self::cis(&self.im, p).scale_real(&mag)
    }

    /// `ζ^j = exp(πi j / 2p)`, cached per thread.
    pub fn zeta_power(p: u32, j: i64, precision: usize) -> Self {
        let order = 4 * p as i64;
        let idx = j.rem_euclid(order) as usize;
        ZETA_CACHE.with(|cache| {
            let mut cache = cache.borrow_mut();
            let table = cache.entry((p, precision)).or_insert_with(|| {
                let step = Self::pi(precision).div(&BigFloat::from_i64(2 * p as i64, precision), precision, RM);
                (0..order)
                    .map(|k| Self::cis(&step.mul(&BigFloat::from_i64(k, precision), precision, RM), precision))
                    .collect()
            });
            table[idx].clone()
        })
    }

    pub fn scale_real(&self, k: &BigFloat) -> Self {
        let p = self.prec;
        ComplexScalar { re: self.re.mul(k, p, RM), im: self.im.mul(k, p, RM), prec: p }
    }

    pub fn div_real(&self, k: &BigFloat) -> Self {
        let p = self.prec;
        ComplexScalar { re: self.re.div(k, p, RM), im: self.im.div(k, p, RM), prec: p }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.prec, RM)
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn conj(&self) -> Self {
        ComplexScalar { re: self.re.clone(), im: negf(&self.im), prec: self.prec }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(self.conj().div_real(&n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// `self += a * b`.
    pub fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        let p = self.prec;
        let re = a.re.mul(&b.re, p, RM).sub(&a.im.mul(&b.im, p, RM), p, RM);
        let im = a.re.mul(&b.im, p, RM).add(&a.im.mul(&b.re, p, RM), p, RM);
        self.re = self.re.add(&re, p, RM);
        self.im = self.im.add(&im, p, RM);
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(bigfloat_to_f64(&self.re), bigfloat_to_f64(&self.im))
    }

    /// Full-precision decimal strings for the real and imaginary parts.
    pub fn to_decimal_strings(&self) -> (String, String) {
        (self.re.to_string(), self.im.to_string())
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.to_c64();
        let prec = f.precision().unwrap_or(12);
        if z.im < 0.0 {
            write!(f, "{:.*}-{:.*}i", prec, z.re, prec, -z.im)
        } else {
            write!(f, "{:.*}+{:.*}i", prec, z.re, prec, z.im)
        }
    }
}

impl fmt::Debug for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexScalar({} + {}i @{})", self.re, self.im, self.prec)
    }
}

impl Add for &ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, o: &ComplexScalar) -> ComplexScalar {
        let p = self.prec.max(o.prec);
        ComplexScalar { re: self.re.add(&o.re, p, RM), im: self.im.add(&o.im, p, RM), prec: p }
    }
}

impl Sub for &ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, o: &ComplexScalar) -> ComplexScalar {
        let p = self.prec.max(o.prec);
        ComplexScalar { re: self.re.sub(&o.re, p, RM), im: self.im.sub(&o.im, p, RM), prec: p }
    }
}

impl Mul for &ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, o: &ComplexScalar) -> ComplexScalar {
        let p = self.prec.max(o.prec);
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        ComplexScalar { re, im, prec: p }
    }
}

impl Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar { re: negf(&self.re), im: negf(&self.im), prec: self.prec }
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for ComplexScalar {
            type Output = ComplexScalar;
            fn $method(self, o: ComplexScalar) -> ComplexScalar {
                (&self).$method(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_conversion() {
        for v in [1.0, -1.0, 0.5, 3.25, -1e-300, 1e300, std::f64::consts::PI, 0.1] {
            assert_eq!(bigfloat_to_f64(&BigFloat::from_f64(v, 128)), v);
        }
        assert_eq!(bigfloat_to_f64(&BigFloat::from_f64(0.0, 128)), 0.0);
    }

    #[test]
    fn arithmetic() {
        let a = ComplexScalar::from_f64(1.0, 2.0, 128);
        let b = ComplexScalar::from_f64(-3.0, 0.5, 128);
        let c = (&a * &b).to_c64();
        assert!((c - Complex64::new(1.0, 2.0) * Complex64::new(-3.0, 0.5)).norm() < 1e-15);
        let inv = a.inverse().unwrap();
        assert!(((&a * &inv).to_c64() - Complex64::new(1.0, 0.0)).norm() < 1e-30);
        assert!(ComplexScalar::zero(128).inverse().is_err());
    }

    #[test]
    fn zeta_powers_close() {
        let z = ComplexScalar::zeta_power(3, 12, 192);
        let one = ComplexScalar::one(192);
        assert!((&z - &one).abs_f64() < 1e-50);
        let e = ComplexScalar::from_f64(0.0, 1.0, 128)
            .scale_real(&ComplexScalar::pi(128))
            .exp();
        assert!((e.to_c64() + Complex64::new(1.0, 0.0)).norm() < 1e-30);
    }

    #[test]
    fn decimal_parse() {
        let z = ComplexScalar::from_decimal("0.25", "-2", 128).unwrap();
        assert_eq!(z.to_c64(), Complex64::new(0.25, -2.0));
        assert!(ComplexScalar::from_decimal("abc", "0", 128).is_err());
    }
}
