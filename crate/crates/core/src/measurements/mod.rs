//! Measurement instances: unit sensing vectors `u_i`, targets `b_i = u_iᵀA⋆u_i`,
//! and the structural metadata the solvers dispatch on.

mod generate;
mod validate;

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{check_dim, invalid, Result};
use crate::linalg::{dot, Matrix, SymMatrix};
use crate::scalar::Scalar;

pub use generate::{
    gen_ground_truth, gen_ground_truth_with_basis, gen_orthogonal, gen_rho_bounded, random_orthogonal,
    Basis, Spectrum, RHO_RETRY_BUDGET,
};
pub use validate::{validate, Check, Offender, ValidationReport};

/// Structural class of the sensing vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime<T> {
    /// Pairwise orthogonal unit vectors (so `m ≤ n`).
    Orthogonal,
    /// Unit vectors with `|⟨u_i, u_j⟩| ≤ ρ` for `i ≠ j`, `ρ ≤ 1/(10m)`.
    RhoBounded(T),
}

impl<T: Scalar> Regime<T> {
    pub fn is_orthogonal(&self) -> bool {
        matches!(self, Regime::Orthogonal)
    }

    pub fn rho(&self) -> Option<T> {
        match *self {
            Regime::Orthogonal => None,
            Regime::RhoBounded(rho) => Some(rho),
        }
    }
}

impl<T: Scalar> std::fmt::Display for Regime<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Orthogonal => f.write_str("orthogonal"),
            Regime::RhoBounded(rho) => write!(f, "rho-bounded({rho})"),
        }
    }
}

/// The largest ρ allowed for `m` measurements in the ρ-bounded regime.
pub fn rho_limit<T: Scalar>(m: usize) -> T {
    T::one() / T::lit(10.0 * m as f64)
}

#[derive(Debug, Clone)]
pub struct MeasurementSet<T: Scalar> {
    u: Matrix<T>,
    b: Vec<T>,
    r_bound: T,
    regime: Regime<T>,
    gram: OnceLock<Matrix<T>>,
}

impl<T: Scalar> MeasurementSet<T> {
    /// Wraps vectors (one per row of `u`) and targets. Structural invariants
    /// are not enforced here; [`validate`] reports on them. The Gram matrix
    /// is computed immediately for the ρ-bounded regime.
    pub fn new(u: Matrix<T>, b: Vec<T>, regime: Regime<T>) -> Result<Self> {
        check_dim(u.rows(), b.len())?;
        if !u.is_finite() || b.iter().any(|x| !x.is_finite()) {
            return Err(invalid("measurement vectors and targets must be finite"));
        }
        if let Regime::RhoBounded(rho) = regime {
            if !(rho >= T::zero()) {
                return Err(invalid("rho must be non-negative"));
            }
        }
        let r_bound = b.iter().fold(T::zero(), |m, x| m.max(x.abs()));
        let ms = Self { u, b, r_bound, regime, gram: OnceLock::new() };
        if !regime.is_orthogonal() {
            ms.gram();
        }
        Ok(ms)
    }

    /// Builds targets from a ground truth: `b_i = u_iᵀ A⋆ u_i`.
    pub fn measure(u: Matrix<T>, a_star: &SymMatrix<T>, regime: Regime<T>) -> Result<Self> {
        check_dim(a_star.dim(), u.cols())?;
        let b = quad_forms(&u, a_star);
        Self::new(u, b, regime)
    }

    /// Overrides the stored `R`; for building deliberately inconsistent instances.
    pub fn with_r_bound(mut self, r_bound: T) -> Self {
        self.r_bound = r_bound;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.u.cols()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.b.len()
    }

    #[inline]
    pub fn vector(&self, i: usize) -> &[T] {
        self.u.row(i)
    }

    pub fn vectors(&self) -> &Matrix<T> {
        &self.u
    }

    pub fn targets(&self) -> &[T] {
        &self.b
    }

    /// `R = max_i |b_i|` as stored.
    pub fn r_bound(&self) -> T {
        self.r_bound
    }

    pub fn regime(&self) -> Regime<T> {
        self.regime
    }

    /// `w_{ij} = ⟨u_i, u_j⟩`, computed on first use for the orthogonal regime.
    pub fn gram(&self) -> &Matrix<T> {
        self.gram.get_or_init(|| {
            let m = self.m();
            let mut w = Matrix::zeros(m, m);
            for i in 0..m {
                for j in i..m {
                    let v = dot(self.u.row(i), self.u.row(j));
                    w[(i, j)] = v;
                    w[(j, i)] = v;
                }
            }
            w
        })
    }

    pub fn gram_if_computed(&self) -> Option<&Matrix<T>> {
        self.gram.get()
    }

    /// `z_i = u_iᵀ A u_i − b_i` for every measurement.
    pub fn residuals(&self, a: &SymMatrix<T>) -> Result<Vec<T>> {
        check_dim(self.n(), a.dim())?;
        let mut z = quad_forms(&self.u, a);
        for (zi, &bi) in z.iter_mut().zip(&self.b) {
            *zi = *zi - bi;
        }
        Ok(z)
    }

    /// `Σ_i c_i u_i u_iᵀ` as a dense symmetric matrix.
    pub fn weighted_outer_sum(&self, coeffs: &[T]) -> Result<SymMatrix<T>> {
        check_dim(self.m(), coeffs.len())?;
        let mut out = SymMatrix::zeros(self.n());
        let rows: Vec<&[T]> = (0..self.m()).map(|i| self.vector(i)).collect();
        out.add_outer_products(coeffs, &rows)?;
        Ok(out)
    }
}

/// `u_iᵀ A u_i` for each row `u_i` of `u`; each entry is computed independently.
pub(crate) fn quad_forms<T: Scalar>(u: &Matrix<T>, a: &SymMatrix<T>) -> Vec<T> {
    let n = u.cols();
    let q = |i: usize| a.quad_form_unchecked(u.row(i));
    if u.rows() * n * n >= 1 << 18 {
        (0..u.rows()).into_par_iter().map(q).collect()
    } else {
        (0..u.rows()).map(q).collect()
    }
}

/// Positive-definite ground truth `A⋆`.
#[derive(Debug, Clone)]
pub struct GroundTruth<T: Scalar> {
    a_star: SymMatrix<T>,
}

impl<T: Scalar> GroundTruth<T> {
    /// Accepts `a_star` only if a Cholesky factorization succeeds.
    pub fn new(a_star: SymMatrix<T>) -> Result<Self> {
        if !is_positive_definite(&a_star) {
            return Err(invalid("ground truth must be positive definite"));
        }
        Ok(Self { a_star })
    }

    pub(crate) fn from_trusted(a_star: SymMatrix<T>) -> Self {
        Self { a_star }
    }

    pub fn matrix(&self) -> &SymMatrix<T> {
        &self.a_star
    }

    pub fn into_matrix(self) -> SymMatrix<T> {
        self.a_star
    }

    pub fn dim(&self) -> usize {
        self.a_star.dim()
    }
}

fn is_positive_definite<T: Scalar>(a: &SymMatrix<T>) -> bool {
    let n = a.dim();
    let mut l = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a.get(i, j);
            for k in 0..j {
                s = s - l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(s > T::zero()) {
                    return false;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    n > 0
}
