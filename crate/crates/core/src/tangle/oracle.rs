//! Dense reference evaluation.
//!
//! Local gates are built from Kronecker products and vectors of `M^{⊗n}` are stored at full
//! length, with no use of weight blocks or the sparse R-matrix code. Meant for cross-checking
//! [`super::Evaluator`] on small inputs.

use super::{FramedBraidWord, Letter, TangleEngine};
use crate::error::{Error, Result};
use crate::linalg::Dense;
use crate::repn::WeightModule;
use crate::scalar::{Backend, Scalar};

fn dense_powers<S: Scalar>(x: &Dense<S>, id: Dense<S>, p: u32) -> Vec<Dense<S>> {
    let mut out = vec![id];
    for n in 1..p as usize {
        let next = x.mul(&out[n - 1]);
        out.push(next);
    }
    out
}

fn swap<S: Scalar>(d: usize, zero: &S, one: &S) -> Dense<S> {
    let mut p = Dense::zeros(d * d, d * d, zero);
    for x in 0..d {
        for y in 0..d {
            p.set(y * d + x, x * d + y, one.clone());
        }
    }
    p
}

/// Dense crossing `H · Σ c_n E^n ⊗ F^n · P` and its inverse by elimination.
pub fn dense_crossing<B: Backend>(m: &WeightModule<B>) -> Result<(Dense<B::S>, Dense<B::S>)> {
    let b = m.backend();
    let (zero, one) = (b.zero(), b.one());
    let d = m.dim();
    let ep = dense_powers(&m.e_dense(), m.identity(), b.p());
    let fp = dense_powers(&m.f_dense(), m.identity(), b.p());
    let mut sum = Dense::zeros(d * d, d * d, &zero);
    for n in 0..b.p() as usize {
        sum = sum.add(&ep[n].kron(&fp[n]).scale(&b.r_coefficient(n)));
    }
    let w = m.weights();
    let h: Vec<B::S> = (0..d * d).map(|k| b.zeta_pow_product(&w[k / d], &w[k % d])).collect();
    let c = Dense::diagonal(&h, &zero).mul(&sum).mul(&swap(d, &zero, &one));
    let inv = c.inverse(&one)?;
    Ok((c, inv))
}

/// Right partial quantum trace of an operator on `M ⊗ M`.
fn close_right<S: Scalar>(x: &Dense<S>, g: &[S], zero: &S) -> Dense<S> {
    let d = g.len();
    let mut out = Dense::zeros(d, d, zero);
    for i in 0..d {
        for j in 0..d {
            let mut acc = zero.clone();
            for (a, ga) in g.iter().enumerate() {
                acc.mul_add_assign(ga, x.get(i * d + a, j * d + a));
            }
            out.set(i, j, acc);
        }
    }
    out
}

/// Dense evaluation of braids and their closures.
pub struct DenseOracle<B: Backend> {
    module: WeightModule<B>,
    cap: usize,
    cross: Dense<B::S>,
    cross_inv: Dense<B::S>,
    twist: Dense<B::S>,
    twist_inv: Dense<B::S>,
    pivot: Vec<B::S>,
}

impl<B: Backend> DenseOracle<B> {
    pub fn new(module: WeightModule<B>, cap: usize) -> Result<Self> {
        let b = module.backend().clone();
        let (cross, cross_inv) = dense_crossing(&module)?;
        let pivot = module.k_power_diagonal(b.p() as i64 - 1);
        let twist = close_right(&cross, &pivot, &b.zero());
        let twist_inv = twist.inverse(&b.one())?;
        Ok(DenseOracle { module, cap, cross, cross_inv, twist, twist_inv, pivot })
    }

    pub fn twist(&self) -> &Dense<B::S> {
        &self.twist
    }

    fn full_dim(&self, n: usize) -> Result<usize> {
        let dim = self.module.dim().checked_pow(n as u32).unwrap_or(usize::MAX);
        if dim > self.cap {
            return Err(Error::CapExceeded { dim, cap: self.cap });
        }
        Ok(dim)
    }

    /// Applies `local` (acting on `width` consecutive factors starting at `first`) to a full vector.
    fn apply(&self, local: &Dense<B::S>, first: usize, width: usize, n: usize, v: &[B::S]) -> Vec<B::S> {
        let d = self.module.dim();
        let inner = d.pow((n - first - width) as u32);
        let span = d.pow(width as u32);
        let zero = self.module.backend().zero();
        let mut out = vec![zero; v.len()];
        for (idx, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let col = (idx / inner) % span;
            let base = idx - col * inner;
            for row in 0..span {
                let c = local.get(row, col);
                if !c.is_zero() {
                    out[base + row * inner].mul_add_assign(c, x);
                }
            }
        }
        out
    }

    fn propagate(&self, word: &FramedBraidWord, start: usize, dim: usize) -> Vec<B::S> {
        let b = self.module.backend();
        let n = word.strands();
        let mut v = vec![b.zero(); dim];
        v[start] = b.one();
        for letter in word.letters() {
            v = match *letter {
                Letter::Sigma { i, inverse } => {
                    let local = if inverse { &self.cross_inv } else { &self.cross };
                    self.apply(local, i - 1, 2, n, &v)
                }
                Letter::Tau { i, inverse } => {
                    let local = if inverse { &self.twist_inv } else { &self.twist };
                    self.apply(local, i - 1, 1, n, &v)
                }
            };
        }
        v
    }

    pub fn braid_operator(&self, word: &FramedBraidWord) -> Result<Dense<B::S>> {
        let dim = self.full_dim(word.strands())?;
        let b = self.module.backend();
        let mut out = Dense::zeros(dim, dim, &b.zero());
        for j in 0..dim {
            for (i, v) in self.propagate(word, j, dim).into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Ok(out)
    }
}

impl<B: Backend> TangleEngine<B> for DenseOracle<B> {
    fn module(&self) -> &WeightModule<B> {
        &self.module
    }

    fn tangle_columns(&self, word: &FramedBraidWord, cols: &[usize]) -> Result<Vec<Vec<B::S>>> {
        word.ensure_knot()?;
        let n = word.strands();
        let dim = self.full_dim(n)?;
        let b = self.module.backend();
        let d = self.module.dim();
        let rest = dim / d;
        let mut g = vec![b.one(); rest];
        for (a, slot) in g.iter_mut().enumerate() {
            let mut r = a;
            for _ in 1..n {
                *slot = slot.mul_ref(&self.pivot[r % d]);
                r /= d;
            }
        }
        let mut out = Vec::new();
        for &j in cols {
            let mut col = vec![b.zero(); d];
            for (a, ga) in g.iter().enumerate() {
                let v = self.propagate(word, j * rest + a, dim);
                for (i, slot) in col.iter_mut().enumerate() {
                    slot.mul_add_assign(ga, &v[i * rest + a]);
                }
            }
            out.push(col);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::{crossing, ribbon};
    use crate::repn::{build_irreducible, build_projective};
    use crate::scalar::Exact;
    use crate::tangle::{preset, Evaluator, DEFAULT_CAP};

    #[test]
    fn local_gates_agree() {
        let b = Exact::new(3).unwrap();
        for m in [build_irreducible(&b, -1, 2).unwrap(), build_projective(&b, 1, 2).unwrap()] {
            let o = DenseOracle::new(m.clone(), DEFAULT_CAP).unwrap();
            assert_eq!(o.cross, crossing(&m).unwrap().to_dense(&b.zero()));
            assert_eq!(o.twist, ribbon(&m).unwrap().matrix);
        }
    }

    #[test]
    fn presets_agree_with_block_path() {
        let b = Exact::new(3).unwrap();
        let m = build_projective(&b, -1, 1).unwrap();
        let o = DenseOracle::new(m.clone(), DEFAULT_CAP).unwrap();
        let e = Evaluator::new(m, DEFAULT_CAP).unwrap();
        for name in ["trefoil", "figure8"] {
            let w = preset(name).unwrap();
            assert_eq!(o.tangle_operator(&w).unwrap().matrix, e.tangle_operator(&w).unwrap().matrix);
        }
        let w = FramedBraidWord::parse("s1 t2 S2 s1 T1", 3).unwrap();
        assert_eq!(o.braid_operator(&w).unwrap(), e.braid_operator(&w).unwrap());
    }
}
