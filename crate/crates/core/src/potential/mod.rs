//! The entry-wise potential `Φ_λ(A) = Σ cosh(λ(u_iᵀAu_i − b_i))`, its
//! derivatives, and the spectral potential against a ground-truth oracle.

mod hyperbolic;
mod spectral;

use crate::error::{check_dim, invalid, Error, OverflowSite, Result};
use crate::linalg::{Matrix, SymMatrix};
use crate::measurements::{quad_forms, MeasurementSet};
use crate::scalar::Scalar;

pub use hyperbolic::ScaledHyperbolics;
pub(crate) use hyperbolic::{residual_overflow, stable_norm};
pub use spectral::{psi, spectral_certificate, SpectralOracle};

/// The temperature `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams<T> {
    lambda: T,
}

impl<T: Scalar> PotentialParams<T> {
    pub fn new(lambda: T) -> Result<Self> {
        if !(lambda > T::zero()) || !lambda.is_finite() {
            return Err(invalid(format!("lambda must be positive and finite, got {lambda}")));
        }
        Ok(Self { lambda })
    }

    #[inline]
    pub fn lambda(&self) -> T {
        self.lambda
    }
}

/// `Φ_λ(A)`. Fails with the offending index if any term overflows.
pub fn phi<T: Scalar>(ms: &MeasurementSet<T>, a: &SymMatrix<T>, p: PotentialParams<T>) -> Result<T> {
    phi_from_residuals(&ms.residuals(a)?, p)
}

pub fn phi_from_residuals<T: Scalar>(z: &[T], p: PotentialParams<T>) -> Result<T> {
    let mut acc = T::zero();
    for (index, &zi) in z.iter().enumerate() {
        let c = (p.lambda * zi).cosh();
        if !c.is_finite() {
            return Err(Error::Overflow(OverflowSite::Residual { index, residual: zi.to_f64_lossy() }));
        }
        acc = acc + c;
    }
    if acc.is_finite() {
        Ok(acc)
    } else {
        Err(residual_overflow(z))
    }
}

/// `ln Φ_λ(A)`, computed in the shifted domain so it stays finite.
pub fn log_phi<T: Scalar>(ms: &MeasurementSet<T>, a: &SymMatrix<T>, p: PotentialParams<T>) -> Result<T> {
    let z = ms.residuals(a)?;
    Ok(ScaledHyperbolics::new(&z, p.lambda).log_sum_cosh())
}

/// `∇Φ_λ(A) = Σ_i λ·sinh(λz_i)·u_iu_iᵀ`.
pub fn phi_grad<T: Scalar>(ms: &MeasurementSet<T>, a: &SymMatrix<T>, p: PotentialParams<T>) -> Result<SymMatrix<T>> {
    let all: Vec<usize> = (0..ms.m()).collect();
    grad_over(ms, a, &all, T::one(), p)
}

/// Stochastic gradient `(m/B)·Σ_{i∈batch} λ·sinh(λz_i)·u_iu_iᵀ`.
pub fn phi_grad_batch<T: Scalar>(
    ms: &MeasurementSet<T>,
    a: &SymMatrix<T>,
    batch: &[usize],
    p: PotentialParams<T>,
) -> Result<SymMatrix<T>> {
    if batch.is_empty() {
        return Err(invalid("batch must be non-empty"));
    }
    if let Some(&i) = batch.iter().find(|&&i| i >= ms.m()) {
        return Err(invalid(format!("batch index {i} out of range for m = {}", ms.m())));
    }
    let scale = T::lit(ms.m() as f64) / T::lit(batch.len() as f64);
    grad_over(ms, a, batch, scale, p)
}

fn grad_over<T: Scalar>(
    ms: &MeasurementSet<T>,
    a: &SymMatrix<T>,
    idx: &[usize],
    scale: T,
    p: PotentialParams<T>,
) -> Result<SymMatrix<T>> {
    check_dim(ms.n(), a.dim())?;
    let mut weights = Vec::with_capacity(idx.len());
    let mut vectors = Vec::with_capacity(idx.len());
    for &i in idx {
        let zi = a.quad_form_unchecked(ms.vector(i)) - ms.targets()[i];
        let w = scale * p.lambda * (p.lambda * zi).sinh();
        if !w.is_finite() {
            return Err(Error::Overflow(OverflowSite::Residual { index: i, residual: zi.to_f64_lossy() }));
        }
        weights.push(w);
        vectors.push(ms.vector(i));
    }
    let mut g = SymMatrix::zeros(ms.n());
    g.add_outer_products(&weights, &vectors)?;
    Ok(g)
}

/// `‖∇Φ_λ‖_F = (Σ λ² sinh²(λz_i))^{1/2}`, exact for orthonormal measurements.
pub fn grad_norm_orthogonal<T: Scalar>(z: &[T], p: PotentialParams<T>) -> Result<T> {
    let h = ScaledHyperbolics::new(z, p.lambda);
    let v = h.unscaled(p.lambda, h.scaled_orthogonal_norm());
    if v.is_finite() {
        Ok(v)
    } else {
        Err(residual_overflow(z))
    }
}

/// Result of [`grad_norm_general`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralNorm<T> {
    pub value: T,
    /// The quadratic form came out negative through round-off and was set to zero.
    pub clamped: bool,
}

/// `‖∇Φ_λ‖_F = λ(Σ_{i,j} w_ij² sinh(λz_i) sinh(λz_j))^{1/2}` using the Gram matrix.
pub fn grad_norm_general<T: Scalar>(z: &[T], gram: &Matrix<T>, p: PotentialParams<T>) -> Result<GeneralNorm<T>> {
    let h = ScaledHyperbolics::new(z, p.lambda);
    let (scaled, clamped) = h.scaled_general_norm(gram)?;
    let value = h.unscaled(p.lambda, scaled);
    if value.is_finite() {
        Ok(GeneralNorm { value, clamped })
    } else {
        Err(residual_overflow(z))
    }
}

/// `⟨∇²Φ_λ(A), h⊗h⟩ = Σ_i λ² cosh(λz_i)·(u_iᵀhu_i)²`.
pub fn hessian_quadratic_form<T: Scalar>(
    ms: &MeasurementSet<T>,
    a: &SymMatrix<T>,
    h: &SymMatrix<T>,
    p: PotentialParams<T>,
) -> Result<T> {
    check_dim(ms.n(), h.dim())?;
    let z = ms.residuals(a)?;
    let uh = quad_forms(ms.vectors(), h);
    let l2 = p.lambda * p.lambda;
    let mut acc = T::zero();
    for (i, (&zi, &q)) in z.iter().zip(&uh).enumerate() {
        let term = l2 * (p.lambda * zi).cosh() * q * q;
        if !term.is_finite() {
            return Err(Error::Overflow(OverflowSite::Residual { index: i, residual: zi.to_f64_lossy() }));
        }
        acc = acc + term;
    }
    Ok(acc)
}
