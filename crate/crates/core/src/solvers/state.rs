use std::borrow::Cow;

use super::IterateStorage;
use crate::error::{check_dim, Result};
use crate::linalg::SymMatrix;
use crate::measurements::{quad_forms, MeasurementSet, Regime};
use crate::potential::ScaledHyperbolics;
use crate::scalar::Scalar;

/// Which closed form gives `‖∇Φ_λ‖_F` from the residuals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMode {
    /// `(Σ λ² sinh²(λz_i))^{1/2}`; `O(m)`.
    Orthogonal,
    /// `λ(Σ w_ij² sinh(λz_i) sinh(λz_j))^{1/2}`; `O(m²)`.
    Gram,
}

impl NormMode {
    pub fn for_regime<T>(regime: Regime<T>) -> Self {
        match regime {
            Regime::Orthogonal => NormMode::Orthogonal,
            Regime::RhoBounded(_) => NormMode::Gram,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Iterate<T> {
    Dense(SymMatrix<T>),
    Deferred {
        base: SymMatrix<T>,
        /// `u_iᵀ·base·u_i`.
        base_q: Vec<T>,
        coeffs: Vec<T>,
    },
}

/// Iterate, maintained residuals, and the hyperbolic values derived from them.
#[derive(Debug, Clone)]
pub struct SolverState<T: Scalar> {
    pub(crate) iterate: Iterate<T>,
    pub(crate) z: Vec<T>,
    pub(crate) hyp: ScaledHyperbolics<T>,
    /// `‖∇Φ‖_F / (λ·e^{shift})` under `mode`.
    pub(crate) scaled_norm: T,
    pub(crate) clamped: bool,
    pub(crate) lambda: T,
    pub(crate) mode: NormMode,
    pub(crate) t: usize,
    pub(crate) perm: Vec<usize>,
    /// `z` was derived from the iterate rather than by the recurrence.
    pub(crate) fresh: bool,
}

/// Below this gradient norm the iterate is treated as stationary.
pub const STATIONARY_NORM: f64 = 1e-14;

impl<T: Scalar> SolverState<T> {
    /// State at `t = 1` for iterate `a1`.
    pub fn new(
        ms: &MeasurementSet<T>,
        a1: SymMatrix<T>,
        lambda: T,
        storage: IterateStorage,
        mode: NormMode,
    ) -> Result<Self> {
        check_dim(ms.n(), a1.dim())?;
        let (iterate, z) = match storage {
            IterateStorage::Dense => {
                let z = ms.residuals(&a1)?;
                (Iterate::Dense(a1), z)
            }
            IterateStorage::Deferred => {
                let base_q = quad_forms(ms.vectors(), &a1);
                let z = base_q.iter().zip(ms.targets()).map(|(&q, &b)| q - b).collect();
                (Iterate::Deferred { base: a1, base_q, coeffs: vec![T::zero(); ms.m()] }, z)
            }
        };
        let mut state = Self {
            iterate,
            z,
            hyp: ScaledHyperbolics { shift: T::zero(), sinh: Vec::new(), cosh: Vec::new() },
            scaled_norm: T::zero(),
            clamped: false,
            lambda,
            mode,
            t: 1,
            perm: (0..ms.m()).collect(),
            fresh: true,
        };
        state.refresh(ms)?;
        Ok(state)
    }

    /// Recomputes the hyperbolic values and the gradient norm from `z`.
    pub(crate) fn refresh(&mut self, ms: &MeasurementSet<T>) -> Result<()> {
        self.hyp = ScaledHyperbolics::new(&self.z, self.lambda);
        let (norm, clamped) = match self.mode {
            NormMode::Orthogonal => (self.hyp.scaled_orthogonal_norm(), false),
            NormMode::Gram => self.hyp.scaled_general_norm(ms.gram())?,
        };
        self.scaled_norm = norm;
        self.clamped = clamped;
        Ok(())
    }

    /// Rebuilds `z` from the iterate and returns the largest correction applied.
    pub fn recompute(&mut self, ms: &MeasurementSet<T>) -> Result<T> {
        let fresh = self.residuals_from_iterate(ms)?;
        let drift = fresh.iter().zip(&self.z).fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()));
        self.z = fresh;
        self.fresh = true;
        self.refresh(ms)?;
        Ok(drift)
    }

    /// `u_iᵀA_tu_i − b_i` evaluated from the stored iterate.
    pub fn residuals_from_iterate(&self, ms: &MeasurementSet<T>) -> Result<Vec<T>> {
        match &self.iterate {
            Iterate::Dense(a) => ms.residuals(a),
            Iterate::Deferred { base_q, coeffs, .. } => {
                let w = ms.gram();
                Ok((0..ms.m())
                    .map(|i| {
                        let row = w.row(i);
                        let mut acc = base_q[i];
                        for (&c, &wij) in coeffs.iter().zip(row) {
                            acc = acc + c * wij * wij;
                        }
                        acc - ms.targets()[i]
                    })
                    .collect())
            }
        }
    }

    /// Adds `Σ_k c_k u_{idx_k} u_{idx_k}ᵀ` to the iterate.
    pub(crate) fn apply(&mut self, ms: &MeasurementSet<T>, idx: &[usize], c: &[T]) -> Result<()> {
        match &mut self.iterate {
            Iterate::Dense(a) => {
                let vectors: Vec<&[T]> = idx.iter().map(|&i| ms.vector(i)).collect();
                a.add_outer_products(c, &vectors)
            }
            Iterate::Deferred { coeffs, .. } => {
                for (&i, &ci) in idx.iter().zip(c) {
                    coeffs[i] = coeffs[i] + ci;
                }
                Ok(())
            }
        }
    }

    #[inline]
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn residuals(&self) -> &[T] {
        &self.z
    }

    pub fn hyperbolics(&self) -> &ScaledHyperbolics<T> {
        &self.hyp
    }

    pub fn mode(&self) -> NormMode {
        self.mode
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn max_residual(&self) -> T {
        self.z.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Potential and gradient norm are only representable as logarithms.
    pub fn is_log_domain(&self) -> bool {
        self.hyp.is_shifted()
    }

    pub fn clamped(&self) -> bool {
        self.clamped
    }

    /// `Φ_λ(A_t)`; `+∞` in the log domain.
    pub fn phi(&self) -> T {
        self.hyp.sum_cosh()
    }

    pub fn log_phi(&self) -> T {
        self.hyp.log_sum_cosh()
    }

    /// The maintained `‖∇Φ_λ(A_t)‖_F`; `+∞` in the log domain.
    pub fn grad_norm(&self) -> T {
        self.hyp.unscaled(self.lambda, self.scaled_norm)
    }

    pub fn log_grad_norm(&self) -> T {
        self.hyp.log_unscaled(self.lambda, self.scaled_norm)
    }

    pub fn is_stationary(&self) -> bool {
        !self.is_log_domain() && self.grad_norm() < T::lit(STATIONARY_NORM)
    }

    /// The dense iterate, if stored densely.
    pub fn dense_iterate(&self) -> Option<&SymMatrix<T>> {
        match &self.iterate {
            Iterate::Dense(a) => Some(a),
            Iterate::Deferred { .. } => None,
        }
    }

    /// `A_t` as a dense matrix; `O(mn²)` for deferred storage.
    pub fn iterate(&self, ms: &MeasurementSet<T>) -> Result<Cow<'_, SymMatrix<T>>> {
        match &self.iterate {
            Iterate::Dense(a) => Ok(Cow::Borrowed(a)),
            Iterate::Deferred { base, coeffs, .. } => {
                let mut a = base.clone();
                let vectors: Vec<&[T]> = (0..ms.m()).map(|i| ms.vector(i)).collect();
                a.add_outer_products(coeffs, &vectors)?;
                Ok(Cow::Owned(a))
            }
        }
    }

    pub fn into_iterate(self, ms: &MeasurementSet<T>) -> Result<SymMatrix<T>> {
        match self.iterate {
            Iterate::Dense(a) => Ok(a),
            Iterate::Deferred { mut base, coeffs, .. } => {
                let vectors: Vec<&[T]> = (0..ms.m()).map(|i| ms.vector(i)).collect();
                base.add_outer_products(&coeffs, &vectors)?;
                Ok(base)
            }
        }
    }
}
