//! Gradient descent on the entry-wise and spectral potentials.

mod config;
mod entrywise;
mod spectral;
mod state;
mod trace;

use crate::error::{check_dim, Error, Result};
use crate::linalg::SymMatrix;
use crate::measurements::MeasurementSet;
use crate::scalar::Scalar;

pub use config::{
    Algorithm, DefaultSchedule, IterateStorage, SolverConfig, StopRule, DEFAULT_GD_BUDGET, DEFAULT_RECOMPUTE_EVERY,
    DEFAULT_SGD_BUDGET, DEFAULT_SPECTRAL_BUDGET,
};
pub use entrywise::{
    gd_step, init_iterate, run_gd, run_sgd, run_sgd_general, sample_batch, sgd_step_general, sgd_step_general_on,
    sgd_step_orthogonal, sgd_step_orthogonal_on,
};
pub use spectral::{run_spectral_gd, spectral_step, SpectralPoint};
pub use state::{NormMode, SolverState, STATIONARY_NORM};
pub use trace::{ConvergenceTrace, TraceRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The configured stop rule was met.
    StopRule,
    /// The gradient vanished.
    Stationary,
    /// `max_iters` steps ran without meeting the stop rule.
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct Solution<T> {
    pub iterate: SymMatrix<T>,
    pub trace: ConvergenceTrace<T>,
    /// Steps taken; the final iterate is `A_{steps+1}`.
    pub steps: usize,
    /// Final residuals `z_i`, or `1 − λ_k(O(A))` for spectral descent.
    pub residuals: Vec<T>,
    pub termination: Termination,
}

impl<T: Scalar> Solution<T> {
    pub fn max_residual(&self) -> T {
        self.residuals.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    fn finish(
        iterate: SymMatrix<T>,
        trace: ConvergenceTrace<T>,
        steps: usize,
        residuals: Vec<T>,
        termination: Termination,
        budget: usize,
    ) -> Result<Self, SolveError<T>> {
        let sol = Self { iterate, trace, steps, residuals, termination };
        match termination {
            Termination::BudgetExhausted => Err(SolveError::BudgetExceeded { budget, partial: Box::new(sol) }),
            _ => Ok(sol),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError<T> {
    #[error("iteration budget of {budget} steps exhausted before the stop rule was met")]
    BudgetExceeded { budget: usize, partial: Box<Solution<T>> },
    #[error(transparent)]
    Core(#[from] Error),
}

impl<T> SolveError<T> {
    /// The partial solution carried by a budget failure.
    pub fn partial(&self) -> Option<&Solution<T>> {
        match self {
            SolveError::BudgetExceeded { partial, .. } => Some(partial),
            SolveError::Core(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verification<T> {
    pub passed: bool,
    pub max_residual: T,
    /// 0-based index of the largest `|u_iᵀAu_i − b_i|`.
    pub worst_index: usize,
}

/// Passes iff `max_i |u_iᵀau_i − b_i| ≤ delta`.
pub fn verify_solution<T: Scalar>(ms: &MeasurementSet<T>, a: &SymMatrix<T>, delta: T) -> Result<Verification<T>> {
    check_dim(ms.n(), a.dim())?;
    let z = ms.residuals(a)?;
    let (worst_index, max_residual) = z
        .iter()
        .enumerate()
        .fold((0, T::zero()), |(bi, bv), (i, v)| if v.abs() > bv { (i, v.abs()) } else { (bi, bv) });
    let passed = z.iter().all(|v| v.abs() <= delta);
    Ok(Verification { passed, max_residual, worst_index })
}
