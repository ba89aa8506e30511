//! Block-sparse evaluation of braid and tangle operators.
//!
//! The crossing and the twist preserve the total weight of a tensor basis vector, so every
//! propagated vector stays inside one total-weight block of `M^{⊗n}`. Vectors are stored densely
//! within their block only.

use std::collections::BTreeMap;

use super::{FramedBraidWord, Letter, TangleEngine};
use crate::braiding::{crossing, crossing_inverse, pivot, ribbon, Ribbon};
use crate::error::{Error, Result};
use crate::linalg::{Dense, Sparse};
use crate::repn::WeightModule;
use crate::scalar::{Backend, Scalar};

/// Default limit on `dim(M)^n`.
pub const DEFAULT_CAP: usize = 20_000;

type Gate<S> = Vec<Vec<(usize, S)>>;

fn gate_from_sparse<S: Scalar>(m: &Sparse<S>) -> Gate<S> {
    (0..m.cols()).map(|j| m.column(j).to_vec()).collect()
}

fn gate_from_dense<S: Scalar>(m: &Dense<S>) -> Gate<S> {
    gate_from_sparse(&m.to_sparse())
}

/// Total-weight blocks of `M^{⊗n}`.
struct Layout {
    n: usize,
    d: usize,
    strides: Vec<usize>,
    block_of: Vec<u32>,
    pos: Vec<u32>,
    members: Vec<Vec<u32>>,
}

impl Layout {
    fn new(keys: &[i64], n: usize) -> Layout {
        let d = keys.len();
        let total = d.pow(n as u32);
        let mut strides = vec![1usize; n];
        for k in (0..n.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * d;
        }
        let mut by_key: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
        let mut key_of = vec![0i64; total];
        for (idx, slot) in key_of.iter_mut().enumerate() {
            let mut rest = idx;
            let mut key = 0;
            for _ in 0..n {
                key += keys[rest % d];
                rest /= d;
            }
            *slot = key;
            by_key.entry(key).or_default().push(idx as u32);
        }
        let mut block_of = vec![0u32; total];
        let mut pos = vec![0u32; total];
        let members: Vec<Vec<u32>> = by_key.into_values().collect();
        for (b, m) in members.iter().enumerate() {
            for (k, &idx) in m.iter().enumerate() {
                block_of[idx as usize] = b as u32;
                pos[idx as usize] = k as u32;
            }
        }
        Layout { n, d, strides, block_of, pos, members }
    }

    fn digit(&self, idx: usize, strand: usize) -> usize {
        (idx / self.strides[strand]) % self.d
    }
}

/// The operator of a (1,1)-tangle on a module.
#[derive(Clone, Debug)]
pub struct TangleOperator<S> {
    pub module: String,
    pub matrix: Dense<S>,
}

impl<S: Scalar> TangleOperator<S> {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// The common diagonal value if the operator is a multiple of the identity.
    pub fn scalar(&self, tol: f64) -> Option<S> {
        let a = self.matrix.get(0, 0).clone();
        let zero = a.sub_ref(&a);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let want = if i == j { &a } else { &zero };
                if !self.matrix.get(i, j).approx_eq(want, tol) {
                    return None;
                }
            }
        }
        Some(a)
    }
}

/// `z_{K1 # K2} = z_{K1} z_{K2}` on a common module.
pub fn connected_sum<S: Scalar>(z1: &TangleOperator<S>, z2: &TangleOperator<S>) -> Result<TangleOperator<S>> {
    if z1.module != z2.module || z1.dim() != z2.dim() {
        return Err(Error::InvalidParameter(format!(
            "module mismatch: {} vs {}",
            z1.module, z2.module
        )));
    }
    Ok(TangleOperator { module: z1.module.clone(), matrix: z1.matrix.mul(&z2.matrix) })
}

/// Precomputed local operators for one module.
pub struct Evaluator<B: Backend> {
    module: WeightModule<B>,
    cap: usize,
    cross: Gate<B::S>,
    cross_inv: Gate<B::S>,
    twist: Gate<B::S>,
    twist_inv: Gate<B::S>,
    pivot: Vec<B::S>,
    ribbon: Ribbon<B::S>,
}

impl<B: Backend> Evaluator<B> {
    pub fn new(module: WeightModule<B>, cap: usize) -> Result<Self> {
        let cross = gate_from_sparse(&crossing(&module)?);
        let cross_inv = gate_from_sparse(&crossing_inverse(&module)?);
        let ribbon = ribbon(&module)?;
        let twist = gate_from_dense(&ribbon.matrix);
        let twist_inv = gate_from_dense(&ribbon.inverse);
        let pivot = pivot(&module);
        Ok(Evaluator { module, cap, cross, cross_inv, twist, twist_inv, pivot, ribbon })
    }

    pub fn ribbon(&self) -> &Ribbon<B::S> {
        &self.ribbon
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn layout(&self, n: usize) -> Result<Layout> {
        let d = self.module.dim();
        let dim = d.checked_pow(n as u32).unwrap_or(usize::MAX);
        if dim > self.cap {
            return Err(Error::CapExceeded { dim, cap: self.cap });
        }
        Ok(Layout::new(self.module.keys(), n))
    }

    /// Propagates the basis vector `start` through the word; returns its block and coordinates.
    fn propagate(&self, layout: &Layout, word: &FramedBraidWord, start: usize) -> (usize, Vec<B::S>) {
        let b = self.module.backend();
        let zero = b.zero();
        let block = layout.block_of[start] as usize;
        let members = &layout.members[block];
        let mut vec = vec![zero.clone(); members.len()];
        vec[layout.pos[start] as usize] = b.one();
        let d = layout.d;
        for letter in word.letters() {
            let mut next = vec![zero.clone(); members.len()];
            match *letter {
                Letter::Sigma { i, inverse } => {
                    let gate = if inverse { &self.cross_inv } else { &self.cross };
                    let (s1, s2) = (layout.strides[i - 1], layout.strides[i]);
                    for (k, v) in vec.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let idx = members[k] as usize;
                        let (x, y) = (layout.digit(idx, i - 1), layout.digit(idx, i));
                        let base = idx - x * s1 - y * s2;
                        for (out, c) in &gate[x * d + y] {
                            let target = base + (out / d) * s1 + (out % d) * s2;
                            next[layout.pos[target] as usize].mul_add_assign(c, v);
                        }
                    }
                }
                Letter::Tau { i, inverse } => {
                    let gate = if inverse { &self.twist_inv } else { &self.twist };
                    let s1 = layout.strides[i - 1];
                    for (k, v) in vec.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let idx = members[k] as usize;
                        let x = layout.digit(idx, i - 1);
                        let base = idx - x * s1;
                        for (out, c) in &gate[x] {
                            next[layout.pos[base + out * s1] as usize].mul_add_assign(c, v);
                        }
                    }
                }
            }
            vec = next;
        }
        (block, vec)
    }

    /// The full matrix of `ρ(b)` on `M^{⊗n}`.
    pub fn braid_operator(&self, word: &FramedBraidWord) -> Result<Dense<B::S>> {
        let layout = self.layout(word.strands())?;
        let b = self.module.backend();
        let total = layout.block_of.len();
        let mut out = Dense::zeros(total, total, &b.zero());
        for start in 0..total {
            let (block, vec) = self.propagate(&layout, word, start);
            for (k, v) in vec.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(layout.members[block][k] as usize, start, v);
                }
            }
        }
        Ok(out)
    }
}

impl<B: Backend> TangleEngine<B> for Evaluator<B> {
    fn module(&self) -> &WeightModule<B> {
        &self.module
    }

    /// Partial quantum trace over strands `2..n`, one column at a time.
    fn tangle_columns(&self, word: &FramedBraidWord, columns: &[usize]) -> Result<Vec<Vec<B::S>>> {
        word.ensure_knot()?;
        let layout = self.layout(word.strands())?;
        let b = self.module.backend();
        let d = layout.d;
        let rest = d.pow(layout.n as u32 - 1);
        // pivot weight of each multi-index over strands 2..n
        let mut piv = vec![b.one(); rest];
        for (a, slot) in piv.iter_mut().enumerate() {
            let mut r = a;
            for _ in 1..layout.n {
                *slot = slot.mul_ref(&self.pivot[r % d]);
                r /= d;
            }
        }
        let mut out = Vec::with_capacity(columns.len());
        for &j in columns {
            let mut col = vec![b.zero(); d];
            for (a, g) in piv.iter().enumerate() {
                let start = j * rest + a;
                let (block, vec) = self.propagate(&layout, word, start);
                for (i, slot) in col.iter_mut().enumerate() {
                    let target = i * rest + a;
                    if layout.block_of[target] as usize == block {
                        let v = &vec[layout.pos[target] as usize];
                        if !v.is_zero() {
                            slot.mul_add_assign(g, v);
                        }
                    }
                }
            }
            out.push(col);
        }
        Ok(out)
    }
}
