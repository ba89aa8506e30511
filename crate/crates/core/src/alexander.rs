//! Colored Alexander invariants `O_λ` from the modules `X(λ)` and `Y(λ, s)`.
//!
//! `O_λ(K)` is the scalar of the tangle operator on `X(λ+1)`. Its λ-derivatives at integers
//! recover `b_s^±`, and its limits at integers recover `a_s`. Derivatives use central differences
//! with one Richardson step; limits at integers are symmetric averages over a small offset.

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::center::CentralDecomposition;
use crate::error::{Error, Result};
use crate::repn::{build_x_lambda, build_y_glued};
use crate::scalar::{Backend, ComplexScalar, CyclotomicNumber, Numeric, DEFAULT_PRECISION};
use crate::tangle::{Evaluator, FramedBraidWord, TangleEngine, DEFAULT_CAP};

#[derive(Clone, Copy, Debug)]
pub struct AlexanderOptions {
    /// Mantissa bits of the complex backend.
    pub precision: usize,
    /// First Richardson step `h`; the second is `h/2`.
    pub step: f64,
    /// Offset for limits at integers.
    pub offset: f64,
    pub cap: usize,
    /// Relative tolerance for the scalar check on `X(λ)`.
    pub scalar_tolerance: f64,
}

impl Default for AlexanderOptions {
    fn default() -> Self {
        AlexanderOptions { precision: DEFAULT_PRECISION, step: 1e-3, offset: 1e-6, cap: DEFAULT_CAP, scalar_tolerance: 1e-8 }
    }
}

/// `O_λ`, optionally with `dO/dλ`.
#[derive(Clone, Debug)]
pub struct AlexanderEvaluation {
    pub p: u32,
    pub lambda: Complex64,
    pub value: ComplexScalar,
    pub derivative: Option<Derivative>,
    /// Set when `λ+1` is within `1e-4` of an integer: `X(λ+1)` is then close to reducible.
    pub ill_conditioned: bool,
}

/// A Richardson-extrapolated derivative and the gap to the plain `h/2` estimate.
#[derive(Clone, Debug)]
pub struct Derivative {
    pub value: ComplexScalar,
    pub error_estimate: f64,
}

/// Evaluator of `O_λ` for one `p`.
pub struct Alexander {
    backend: Numeric,
    opts: AlexanderOptions,
    cache: Mutex<HashMap<(String, [u64; 2]), ComplexScalar>>,
}

fn near_integer(z: Complex64) -> bool {
    z.im.abs() < 1e-4 && (z.re - z.re.round()).abs() < 1e-4
}

impl Alexander {
    pub fn new(p: u32, opts: AlexanderOptions) -> Result<Self> {
        Ok(Alexander { backend: Numeric::new(p, opts.precision)?, opts, cache: Mutex::new(HashMap::new()) })
    }

    pub fn p(&self) -> u32 {
        self.backend.p()
    }

    pub fn backend(&self) -> &Numeric {
        &self.backend
    }

    pub fn options(&self) -> &AlexanderOptions {
        &self.opts
    }

    fn scalar(&self, re: f64, im: f64) -> ComplexScalar {
        self.backend.scalar(re, im)
    }

    /// `O_λ` at a complex `λ` given at full precision.
    pub fn value(&self, word: &FramedBraidWord, lambda: &ComplexScalar) -> Result<ComplexScalar> {
        let key = (word.to_string() + "/" + &word.strands().to_string(), {
            let z = lambda.to_c64();
            [z.re.to_bits(), z.im.to_bits()]
        });
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let shifted = lambda + &self.backend.one();
        let e = Evaluator::new(build_x_lambda(&self.backend, &shifted), self.opts.cap)?;
        let z = e.tangle_operator(word)?;
        let v = z.scalar(self.opts.scalar_tolerance).ok_or_else(|| {
            Error::Precision(format!("tangle operator on {} is not scalar within tolerance", z.module))
        })?;
        if !v.is_finite() {
            return Err(Error::Precision(format!("non-finite value on {}", z.module)));
        }
        self.cache.lock().expect("cache lock").insert(key, v.clone());
        Ok(v)
    }

    /// `O_λ(K)` for `λ` given in double precision.
    pub fn colored_alexander(&self, word: &FramedBraidWord, lambda: Complex64) -> Result<ComplexScalar> {
        self.value(word, &ComplexScalar::from_c64(lambda, self.opts.precision))
    }

    pub fn evaluate(&self, word: &FramedBraidWord, lambda: Complex64, with_derivative: bool) -> Result<AlexanderEvaluation> {
        let l = ComplexScalar::from_c64(lambda, self.opts.precision);
        let value = self.value(word, &l)?;
        let derivative = if with_derivative { Some(self.derivative_at(word, &l, self.opts.step)?) } else { None };
        Ok(AlexanderEvaluation {
            p: self.p(),
            lambda,
            value,
            derivative,
            ill_conditioned: near_integer(lambda + 1.0),
        })
    }

    fn difference(&self, word: &FramedBraidWord, lambda: &ComplexScalar, h: &ComplexScalar) -> Result<ComplexScalar> {
        let up = self.value(word, &(lambda + h))?;
        let down = self.value(word, &(lambda - h))?;
        (&up - &down).checked_div(&(h + h))
    }

    /// `dO/dλ` by central differences at `h` and `h/2` plus one Richardson step.
    pub fn derivative_at(&self, word: &FramedBraidWord, lambda: &ComplexScalar, step: f64) -> Result<Derivative> {
        let h = self.scalar(step, 0.0);
        let h2 = self.scalar(step / 2.0, 0.0);
        let d1 = self.difference(word, lambda, &h)?;
        let d2 = self.difference(word, lambda, &h2)?;
        let four = self.backend.from_i64(4);
        let three = self.backend.from_i64(3);
        let value = (&(&four * &d2) - &d1).checked_div(&three)?;
        let error_estimate = (&value - &d2).abs_f64();
        Ok(Derivative { value, error_estimate })
    }

    pub fn alexander_derivative(&self, word: &FramedBraidWord, lambda: Complex64) -> Result<Derivative> {
        self.derivative_at(word, &ComplexScalar::from_c64(lambda, self.opts.precision), self.opts.step)
    }

    /// `lim_{λ→μ} O_λ` as `(O(μ+δ) + O(μ-δ)) / 2`.
    pub fn limit(&self, word: &FramedBraidWord, mu: i64) -> Result<ComplexScalar> {
        let m = self.backend.from_i64(mu);
        let d = self.scalar(self.opts.offset, 0.0);
        let up = self.value(word, &(&m + &d))?;
        let down = self.value(word, &(&m - &d))?;
        (&up + &down).checked_div(&self.backend.from_i64(2))
    }

    /// `dO/dλ` at an integer.
    pub fn derivative_at_integer(&self, word: &FramedBraidWord, mu: i64) -> Result<Derivative> {
        self.derivative_at(word, &self.backend.from_i64(mu), self.opts.step)
    }

    fn glued_columns(
        &self,
        word: &FramedBraidWord,
        lambda: &ComplexScalar,
        s: u32,
        labels: &[String],
    ) -> Result<(Vec<Vec<ComplexScalar>>, Vec<usize>)> {
        let m = build_y_glued(&self.backend, lambda, s)?;
        let idx: Vec<usize> = labels
            .iter()
            .map(|l| m.index_of(l).ok_or_else(|| Error::InvalidParameter(format!("no basis vector {l} in {}", m.name()))))
            .collect::<Result<_>>()?;
        let e = Evaluator::new(m, self.opts.cap)?;
        Ok((e.tangle_columns(word, &idx)?, idx))
    }

    /// The `(c_s, d_0)` entry of the tangle operator on `Y(λ, s)`; needs `1 <= s <= p-1`.
    pub fn glued_offdiagonal(&self, word: &FramedBraidWord, lambda: Complex64, s: u32) -> Result<ComplexScalar> {
        let l = ComplexScalar::from_c64(lambda, self.opts.precision);
        let (cols, _) = self.glued_columns(word, &l, s, &["d0".to_string()])?;
        let m = build_y_glued(&self.backend, &l, s)?;
        let row = m
            .index_of(&format!("c{s}"))
            .ok_or_else(|| Error::InvalidParameter(format!("off-diagonal entry needs s < p, got s={s}")))?;
        Ok(cols[0][row].clone())
    }

    /// `O_{λ-2s-1}` against `O_{λ-1} - [s][λ-s] x`.
    pub fn offdiagonal_check(&self, word: &FramedBraidWord, lambda: Complex64, s: u32) -> Result<OffDiagonalCheck> {
        let prec = self.opts.precision;
        let l = ComplexScalar::from_c64(lambda, prec);
        let x = self.glued_offdiagonal(word, lambda, s)?;
        let si = s as i64;
        let lhs = self.value(word, &(&l - &self.backend.from_i64(2 * si + 1)))?;
        let o1 = self.value(word, &(&l - &self.backend.one()))?;
        let k = self.coupling(&l, s);
        let rhs = &o1 - &(&k * &x);
        let residual = (&lhs - &rhs).abs_f64();
        Ok(OffDiagonalCheck { s, lambda, lhs: lhs.to_c64(), rhs: rhs.to_c64(), offdiagonal: x.to_c64(), residual })
    }

    /// `[s][λ-s]`.
    fn coupling(&self, l: &ComplexScalar, s: u32) -> ComplexScalar {
        let b = &self.backend;
        let si = s as i64;
        &b.quantum_integer(&b.from_i64(si)) * &b.quantum_integer(&(l - &b.from_i64(si)))
    }

    /// `‖z h - O_{λ-1-2s} h‖` for `h = c_s - [s][λ-s] d_0`, the highest weight vector of the submodule.
    pub fn highest_weight_residual(&self, word: &FramedBraidWord, lambda: Complex64, s: u32) -> Result<f64> {
        let l = ComplexScalar::from_c64(lambda, self.opts.precision);
        let labels = [format!("c{s}"), "d0".to_string()];
        let (cols, idx) = self.glued_columns(word, &l, s, &labels)?;
        let k = self.coupling(&l, s);
        let o = self.value(word, &(&l - &self.backend.from_i64(2 * s as i64 + 1)))?;
        let mut worst: f64 = 0.0;
        for i in 0..cols[0].len() {
            let zh = &cols[0][i] - &(&k * &cols[1][i]);
            let h = if i == idx[0] {
                self.backend.one()
            } else if i == idx[1] {
                -&k
            } else {
                self.backend.zero()
            };
            worst = worst.max((&zh - &(&o * &h)).abs_f64());
        }
        Ok(worst)
    }

    /// `p sin²(π/p) / (π sin(πs/p))`.
    fn coefficient(&self, s: u32) -> ComplexScalar {
        let prec = self.opts.precision;
        let p = self.p() as i64;
        let sin = |k: i64| -> ComplexScalar {
            let theta = self.backend.exp_i_pi(&self.backend.from_i64(k), 1, 1);
            // exp(iπk/p) has imaginary part sin(πk/p)
            ComplexScalar::new(theta.im().clone(), self.backend.zero().im().clone(), prec)
        };
        let pi = ComplexScalar::new(ComplexScalar::pi(prec), self.backend.zero().im().clone(), prec);
        let s1 = sin(1);
        let num = &(&self.backend.from_i64(p) * &s1) * &s1;
        num.checked_div(&(&pi * &sin(s as i64))).expect("sin(πs/p) is non-zero for 1 <= s < p")
    }

    /// Compares `b_s^±`, `a_s` with the derivative and limit formulas for `1 <= s <= p-1`.
    pub fn verify_derivative_formula(
        &self,
        word: &FramedBraidWord,
        exact: &CentralDecomposition<CyclotomicNumber>,
        tolerance: f64,
        a_tolerance: f64,
    ) -> Result<DerivativeFormulaReport> {
        let p = self.p() as i64;
        let points: Vec<i64> = (1..p).flat_map(|s| [2 * p - s - 1, s - 1, -s - 1]).collect();
        let mut uniq = points.clone();
        uniq.sort_unstable();
        uniq.dedup();
        let derivs: HashMap<i64, Derivative> = uniq
            .par_iter()
            .map(|&mu| Ok((mu, self.derivative_at_integer(word, mu)?)))
            .collect::<Result<_>>()?;
        let rows = (1..p)
            .into_par_iter()
            .map(|s| {
                let c = self.coefficient(s as u32);
                let d = |mu: i64| &derivs[&mu].value;
                let plus = -&(&c * &(d(2 * p - s - 1) - d(s - 1)));
                let minus = &c * &(d(s - 1) - d(-s - 1));
                let lower = self.limit(word, s - 1)?;
                let upper = self.limit(word, 2 * p - s - 1)?;
                let su = s as usize;
                let embed = |x: &CyclotomicNumber| self.backend.embed(x);
                let (bp, bm, a) = (embed(exact.b_plus(su)), embed(exact.b_minus(su)), embed(exact.a(su)));
                let derivative_error = [2 * p - s - 1, s - 1, -s - 1]
                    .iter()
                    .map(|mu| derivs[mu].error_estimate)
                    .fold(0.0, f64::max);
                Ok(DerivativeFormulaRow {
                    s: s as u32,
                    b_plus: bp.to_c64(),
                    b_plus_formula: plus.to_c64(),
                    b_plus_residual: (&bp - &plus).abs_f64(),
                    b_minus: bm.to_c64(),
                    b_minus_formula: minus.to_c64(),
                    b_minus_residual: (&bm - &minus).abs_f64(),
                    a: a.to_c64(),
                    o_lower: lower.to_c64(),
                    o_upper: upper.to_c64(),
                    a_residual: (&a - &lower).abs_f64(),
                    upper_residual: (&a - &upper).abs_f64(),
                    derivative_error,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DerivativeFormulaReport { p: self.p(), tolerance, a_tolerance, rows })
    }

    /// `O_{2p-s-1} = O_{s-1} = a_s` for `1 <= s <= p`, with limits from the offset.
    pub fn verify_symmetry(
        &self,
        word: &FramedBraidWord,
        exact: &CentralDecomposition<CyclotomicNumber>,
        tolerance: f64,
    ) -> Result<SymmetryReport> {
        let p = self.p() as i64;
        let rows = (1..=p)
            .into_par_iter()
            .map(|s| {
                let lower = self.limit(word, s - 1)?;
                let upper = self.limit(word, 2 * p - s - 1)?;
                let a = self.backend.embed(exact.a(s as usize));
                Ok(SymmetryRow {
                    s: s as u32,
                    o_lower: lower.to_c64(),
                    o_upper: upper.to_c64(),
                    a: a.to_c64(),
                    residual: (&upper - &lower).abs_f64(),
                    a_residual: (&a - &lower).abs_f64().max((&a - &upper).abs_f64()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SymmetryReport { p: self.p(), tolerance, rows })
    }
}

#[derive(Clone, Debug)]
pub struct OffDiagonalCheck {
    pub s: u32,
    pub lambda: Complex64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub offdiagonal: Complex64,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct DerivativeFormulaRow {
    pub s: u32,
    pub b_plus: Complex64,
    pub b_plus_formula: Complex64,
    pub b_plus_residual: f64,
    pub b_minus: Complex64,
    pub b_minus_formula: Complex64,
    pub b_minus_residual: f64,
    pub a: Complex64,
    pub o_lower: Complex64,
    pub o_upper: Complex64,
    pub a_residual: f64,
    pub upper_residual: f64,
    pub derivative_error: f64,
}

#[derive(Clone, Debug)]
pub struct DerivativeFormulaReport {
    pub p: u32,
    pub tolerance: f64,
    pub a_tolerance: f64,
    pub rows: Vec<DerivativeFormulaRow>,
}

impl DerivativeFormulaReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| {
            r.b_plus_residual < self.tolerance
                && r.b_minus_residual < self.tolerance
                && r.a_residual < self.a_tolerance
                && r.upper_residual < self.tolerance
        })
    }

    pub fn worst_b_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.b_plus_residual.max(r.b_minus_residual)).fold(0.0, f64::max)
    }

    pub fn worst_a_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.a_residual).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct SymmetryRow {
    pub s: u32,
    pub o_lower: Complex64,
    pub o_upper: Complex64,
    pub a: Complex64,
    pub residual: f64,
    pub a_residual: f64,
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub p: u32,
    pub tolerance: f64,
    pub rows: Vec<SymmetryRow>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.residual < self.tolerance && r.a_residual < self.tolerance)
    }

    pub fn worst_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.residual.max(r.a_residual)).fold(0.0, f64::max)
    }
}
