//! Small dense and column-sparse matrices over a [`Scalar`].

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Dense<S> {
    pub fn zeros(rows: usize, cols: usize, zero: &S) -> Self {
        Dense { rows, cols, data: vec![zero.clone(); rows * cols] }
    }

    pub fn identity(n: usize, zero: &S, one: &S) -> Self {
        let mut m = Self::zeros(n, n, zero);
        for i in 0..n {
            m.data[i * n + i] = one.clone();
        }
        m
    }

    pub fn diagonal(entries: &[S], zero: &S) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n, zero);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Dense { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut S {
        &mut self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in matrix product");
        let zero = self.zero_like(o);
        let mut out = Self::zeros(self.rows, o.cols, &zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j].mul_add_assign(a, b);
                    }
                }
            }
        }
        out
    }

    fn zero_like(&self, o: &Self) -> S {
        let any = self.data.first().or(o.data.first()).expect("non-empty matrix");
        any.sub_ref(any)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect();
        Dense { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect();
        Dense { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: &S) -> Self {
        let data = self.data.iter().map(|a| a.mul_ref(k)).collect();
        Dense { rows: self.rows, cols: self.cols, data }
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        let zero = self.zero_like(o);
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = Self::zeros(r, c, &zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a.mul_ref(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Largest entry modulus, via the double-precision embedding.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_c64().norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        (self.rows, self.cols) == (o.rows, o.cols)
            && self.data.iter().zip(&o.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Gauss-Jordan inverse. Pivots on the largest modulus, which is also fine for exact entries.
    pub fn inverse(&self, one: &S) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::InvalidParameter("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let zero = one.sub_ref(one);
        let mut a = self.clone();
        let mut inv = Self::identity(n, &zero, one);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .max_by(|&x, &y| {
                    a.get(x, col)
                        .to_c64()
                        .norm()
                        .partial_cmp(&a.get(y, col).to_c64().norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .ok_or(Error::DivisionByZero)?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p_inv = a.get(col, col).try_inverse()?;
            for j in 0..n {
                let v = a.get(col, j).mul_ref(&p_inv);
                a.set(col, j, v);
                let v = inv.get(col, j).mul_ref(&p_inv);
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j).sub_ref(&factor.mul_ref(a.get(col, j)));
                    a.set(r, j, v);
                    let v = inv.get(r, j).sub_ref(&factor.mul_ref(inv.get(col, j)));
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    pub fn to_sparse(&self) -> Sparse<S> {
        let mut s = Sparse::new(self.rows, self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                let v = self.get(i, j);
                if !v.is_zero() {
                    s.columns[j].push((i, v.clone()));
                }
            }
        }
        s
    }
}

/// Column-oriented sparse matrix: `columns[j]` lists the non-zero `(row, value)` pairs.
#[derive(Clone, Debug)]
pub struct Sparse<S> {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> Sparse<S> {
    pub fn new(rows: usize, cols: usize) -> Self {
        Sparse { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `v` at `(i, j)`, merging with an existing entry.
    pub fn add_entry(&mut self, i: usize, j: usize, v: S) {
        if v.is_zero() {
            return;
        }
        let col = &mut self.columns[j];
        if let Some(pos) = col.iter().position(|(r, _)| *r == i) {
            let sum = col[pos].1.add_ref(&v);
            if sum.is_zero() {
                col.remove(pos);
            } else {
                col[pos].1 = sum;
            }
        } else {
            col.push((i, v));
            col.sort_by_key(|(r, _)| *r);
        }
    }

    pub fn column(&self, j: usize) -> &[(usize, S)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&S> {
        self.columns[j].iter().find(|(r, _)| *r == i).map(|(_, v)| v)
    }

    pub fn to_dense(&self, zero: &S) -> Dense<S> {
        let mut d = Dense::zeros(self.rows, self.cols, zero);
        for (i, j, v) in self.entries() {
            d.set(i, j, v.clone());
        }
        d
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Sparse::new(self.rows, o.cols);
        for j in 0..o.cols {
            for (k, b) in &o.columns[j] {
                for (i, a) in &self.columns[*k] {
                    out.add_entry(*i, j, a.mul_ref(b));
                }
            }
        }
        out
    }

    /// Applies the matrix to a sparse vector given as `(index, value)` pairs.
    pub fn apply(&self, v: &[(usize, S)]) -> Vec<(usize, S)> {
        let mut acc: Vec<(usize, S)> = Vec::new();
        for (j, x) in v {
            for (i, a) in &self.columns[*j] {
                let term = a.mul_ref(x);
                match acc.iter_mut().find(|(r, _)| r == i) {
                    Some(slot) => slot.1 = slot.1.add_ref(&term),
                    None => acc.push((*i, term)),
                }
            }
        }
        acc.retain(|(_, v)| !v.is_zero());
        acc.sort_by_key(|(i, _)| *i);
        acc
    }
}
