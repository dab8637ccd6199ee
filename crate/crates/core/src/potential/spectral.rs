use super::PotentialParams;
use crate::error::{check_dim, Result};
use crate::linalg::{eig, matrix_fn_from, tr_cosh_of, SymMatrix};
use crate::measurements::GroundTruth;
use crate::scalar::Scalar;

/// Answers `A ↦ A⋆^{-1/2}·A·A⋆^{-1/2}` with both square roots cached.
#[derive(Debug, Clone)]
pub struct SpectralOracle<T: Scalar> {
    a_star: GroundTruth<T>,
    sqrt: SymMatrix<T>,
    inv_sqrt: SymMatrix<T>,
}

impl<T: Scalar> SpectralOracle<T> {
    pub fn new(a_star: GroundTruth<T>) -> Result<Self> {
        let ed = eig(a_star.matrix())?;
        let sqrt = matrix_fn_from(&ed, |v| v.sqrt())?;
        let inv_sqrt = matrix_fn_from(&ed, |v| T::one() / v.sqrt())?;
        Ok(Self { a_star, sqrt, inv_sqrt })
    }

    pub fn ground_truth(&self) -> &GroundTruth<T> {
        &self.a_star
    }

    pub fn dim(&self) -> usize {
        self.a_star.dim()
    }

    pub fn sqrt(&self) -> &SymMatrix<T> {
        &self.sqrt
    }

    pub fn inv_sqrt(&self) -> &SymMatrix<T> {
        &self.inv_sqrt
    }

    /// `A⋆^{-1/2}·a·A⋆^{-1/2}`.
    pub fn query(&self, a: &SymMatrix<T>) -> Result<SymMatrix<T>> {
        check_dim(self.dim(), a.dim())?;
        a.congruence(&self.inv_sqrt)
    }

    /// `A⋆^{1/2}·y·A⋆^{1/2}`, the inverse of [`query`](Self::query).
    pub fn lift(&self, y: &SymMatrix<T>) -> Result<SymMatrix<T>> {
        check_dim(self.dim(), y.dim())?;
        y.congruence(&self.sqrt)
    }
}

/// `Ψ_λ(A) = tr cosh(λ(I − A⋆^{-1/2}AA⋆^{-1/2}))`.
pub fn psi<T: Scalar>(oracle: &SpectralOracle<T>, a: &SymMatrix<T>, p: PotentialParams<T>) -> Result<T> {
    let y = oracle.query(a)?;
    let x: Vec<T> = eig(&y)?.values.iter().map(|&v| p.lambda() * (T::one() - v)).collect();
    tr_cosh_of(&x)
}

/// `δ = max_k |1 − λ_k(A⋆^{-1/2}AA⋆^{-1/2})|`, the smallest `δ` with
/// `(1−δ)A⋆ ⪯ A ⪯ (1+δ)A⋆`.
pub fn spectral_certificate<T: Scalar>(oracle: &SpectralOracle<T>, a: &SymMatrix<T>) -> Result<T> {
    let y = oracle.query(a)?;
    Ok(eig(&y)?.values.iter().fold(T::zero(), |m, &v| m.max((T::one() - v).abs())))
}
