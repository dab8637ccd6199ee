use std::ops::{Index, IndexMut};

use rayon::prelude::*;

use crate::error::{check_dim, invalid, Result};
use crate::scalar::Scalar;

/// Work (multiply-adds) below which row loops stay on the calling thread.
const PAR_WORK: usize = 1 << 18;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(invalid(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(invalid(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend_from_slice(r);
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.cols, rhs.rows)?;
        let mut out = Self::zeros(self.rows, rhs.cols);
        let k_dim = self.cols;
        let fill = |(i, out_row): (usize, &mut [T])| {
            for k in 0..k_dim {
                let a = self.data[i * k_dim + k];
                if a == T::zero() {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o = *o + a * b;
                }
            }
        };
        if self.rows * k_dim * rhs.cols >= PAR_WORK && rhs.cols > 0 {
            out.data.par_chunks_mut(rhs.cols).enumerate().for_each(fill);
        } else if rhs.cols > 0 {
            out.data.chunks_mut(rhs.cols).enumerate().for_each(fill);
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[T]) -> Result<Vec<T>> {
        check_dim(self.cols, x.len())?;
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn scale(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        check_dim(self.rows, rhs.rows)?;
        check_dim(self.cols, rhs.cols)?;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn frobenius_norm(&self) -> T {
        norm2(&self.data)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest absolute entry-wise difference; `None` on shape mismatch.
    pub fn max_abs_diff(&self, rhs: &Self) -> Option<T> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return None;
        }
        Some(self.data.iter().zip(&rhs.data).fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs())))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

#[inline]
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

#[inline]
pub fn norm2<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Dense symmetric matrix. Entries `(i, j)` and `(j, i)` are bitwise equal and finite.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T>(Matrix<T>);

impl<T: Scalar> SymMatrix<T> {
    /// Symmetrizes `m` as `(m + mᵀ)/2`. Rejects non-square or non-finite input.
    pub fn from_matrix(mut m: Matrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(invalid(format!("symmetric matrix must be square, got {}x{}", m.rows, m.cols)));
        }
        if !m.is_finite() {
            return Err(invalid("matrix has non-finite entries"));
        }
        let n = m.rows;
        let half = T::lit(0.5);
        for i in 0..n {
            for j in (i + 1)..n {
                let v = (m[(i, j)] + m[(j, i)]) * half;
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        Ok(Self(m))
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        Self::from_matrix(Matrix::from_rows(rows)?)
    }

    pub fn zeros(n: usize) -> Self {
        Self(Matrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn scaled_identity(n: usize, tau: T) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = tau;
        }
        Self(m)
    }

    pub fn from_diag(diag: &[T]) -> Self {
        Self::scaled_identity(diag.len(), T::zero()).with_diag(diag)
    }

    fn with_diag(mut self, diag: &[T]) -> Self {
        for (i, &d) in diag.iter().enumerate() {
            self.0[(i, i)] = d;
        }
        self
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.rows
    }

    #[inline]
    pub fn as_matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.0[(i, j)]
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.0[(i, i)]).collect()
    }

    pub fn trace(&self) -> T {
        self.0.trace()
    }

    pub fn frobenius_norm(&self) -> T {
        self.0.frobenius_norm()
    }

    /// `uᵀ A u`.
    pub fn quad_form(&self, u: &[T]) -> Result<T> {
        check_dim(self.dim(), u.len())?;
        Ok(self.quad_form_unchecked(u))
    }

    #[inline]
    pub(crate) fn quad_form_unchecked(&self, u: &[T]) -> T {
        u.iter().enumerate().fold(T::zero(), |acc, (i, &ui)| acc + ui * dot(self.0.row(i), u))
    }

    /// `A ← A + α·u uᵀ`, keeping exact symmetry.
    pub fn rank_one_update(&mut self, alpha: T, u: &[T]) -> Result<()> {
        check_dim(self.dim(), u.len())?;
        self.add_outer_products(&[alpha], &[u])
    }

    /// `A ← A + Σ_k w_k·v_k v_kᵀ` in one pass over the entries.
    pub fn add_outer_products(&mut self, weights: &[T], vectors: &[&[T]]) -> Result<()> {
        check_dim(weights.len(), vectors.len())?;
        let n = self.dim();
        for v in vectors {
            check_dim(n, v.len())?;
        }
        if n == 0 || weights.is_empty() {
            return Ok(());
        }
        // w·(v_i·v_j) rather than (w·v_i)·v_j: the product is symmetric in i, j.
        let fill = |(i, row): (usize, &mut [T])| {
            for (&w, v) in weights.iter().zip(vectors) {
                let vi = v[i];
                for (a, &vj) in row.iter_mut().zip(v.iter()) {
                    *a = *a + w * (vi * vj);
                }
            }
        };
        if n * n * weights.len() >= PAR_WORK {
            self.0.data.par_chunks_mut(n).enumerate().for_each(fill);
        } else {
            self.0.data.chunks_mut(n).enumerate().for_each(fill);
        }
        Ok(())
    }

    /// `A ← A + α·B`.
    pub fn axpy(&mut self, alpha: T, other: &Self) -> Result<()> {
        check_dim(self.dim(), other.dim())?;
        for (a, &b) in self.0.data.iter_mut().zip(&other.0.data) {
            *a = *a + alpha * b;
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.sub(&other.0)?))
    }

    pub fn scale(&self, s: T) -> Self {
        Self(self.0.scale(s))
    }

    /// `S·A·S` for symmetric `S`, re-symmetrized.
    pub fn congruence(&self, s: &Self) -> Result<Self> {
        let sa = s.0.matmul(&self.0)?;
        Self::from_matrix(sa.matmul(&s.0)?)
    }

    /// `Q·A·Qᵀ` for any conformable `Q`, re-symmetrized.
    pub fn conjugate(&self, q: &Matrix<T>) -> Result<Self> {
        let qa = q.matmul(&self.0)?;
        Self::from_matrix(qa.matmul(&q.transpose())?)
    }

    pub fn is_exactly_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.0[(i, j)] == self.0[(j, i)]))
    }
}

impl<T> AsRef<Matrix<T>> for SymMatrix<T> {
    fn as_ref(&self) -> &Matrix<T> {
        &self.0
    }
}
