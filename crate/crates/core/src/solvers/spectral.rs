use std::time::Instant;

use super::{Algorithm, ConvergenceTrace, SolveError, Solution, SolverConfig, StopRule, Termination, TraceRecord};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{eig, EigDecomp, SymMatrix};
use crate::potential::{stable_norm, ScaledHyperbolics, SpectralOracle};
use crate::scalar::Scalar;

use super::state::STATIONARY_NORM;

/// Spectral quantities of one iterate: `X = λ(I − O(A))` diagonalized.
#[derive(Debug, Clone)]
pub struct SpectralPoint<T> {
    /// Eigen-decomposition of `O(A) = A⋆^{-1/2}AA⋆^{-1/2}`.
    pub oracle_eig: EigDecomp<T>,
    /// `sinh`/`cosh` of the eigenvalues of `X`, with a common scale factor.
    pub hyp: ScaledHyperbolics<T>,
    pub lambda: T,
}

impl<T: Scalar> SpectralPoint<T> {
    pub fn at(oracle: &SpectralOracle<T>, a: &SymMatrix<T>, lambda: T) -> Result<Self> {
        let oracle_eig = eig(&oracle.query(a)?)?;
        let x: Vec<T> = oracle_eig.values.iter().map(|&y| T::one() - y).collect();
        let hyp = ScaledHyperbolics::new(&x, lambda);
        Ok(Self { oracle_eig, hyp, lambda })
    }

    pub fn is_log_domain(&self) -> bool {
        self.hyp.is_shifted()
    }

    /// `Ψ_λ(A)`; `+∞` in the log domain.
    pub fn psi(&self) -> T {
        self.hyp.sum_cosh()
    }

    pub fn log_psi(&self) -> T {
        self.hyp.log_sum_cosh()
    }

    /// `‖λ·sinh(X)‖_F`.
    pub fn grad_norm(&self) -> T {
        self.hyp.unscaled(self.lambda, stable_norm(&self.hyp.sinh))
    }

    pub fn log_grad_norm(&self) -> T {
        self.hyp.log_unscaled(self.lambda, stable_norm(&self.hyp.sinh))
    }

    /// `max_k |1 − λ_k(O(A))|`.
    pub fn certificate(&self) -> T {
        self.oracle_eig.values.iter().fold(T::zero(), |m, &y| m.max((T::one() - y).abs()))
    }

    /// True when the gradient vanishes or `O(A)` equals `I` to within the
    /// rounding of the oracle query.
    pub fn is_stationary(&self) -> bool {
        if self.is_log_domain() {
            return false;
        }
        let resolution = T::lit(64.0 * self.oracle_eig.values.len() as f64) * T::epsilon();
        !(self.grad_norm() >= T::lit(STATIONARY_NORM)) || self.certificate() <= resolution
    }

    /// `sinh(X)/‖sinh(X)‖_F` in oracle coordinates.
    pub fn direction(&self) -> Result<SymMatrix<T>> {
        let norm = stable_norm(&self.hyp.sinh);
        if self.is_stationary() || !(norm > T::zero()) {
            return Err(Error::AlreadyStationary);
        }
        let d: Vec<T> = self.hyp.sinh.iter().map(|&s| s / norm).collect();
        self.oracle_eig.compose(&d)
    }
}

/// `A ← A + ε·A⋆^{1/2} sinh(X) A⋆^{1/2} / ‖sinh(X)‖_F`.
pub fn spectral_step<T: Scalar>(
    oracle: &SpectralOracle<T>,
    a: &mut SymMatrix<T>,
    cfg: &SolverConfig<T>,
) -> Result<SpectralPoint<T>> {
    let point = SpectralPoint::at(oracle, a, cfg.lambda)?;
    let lifted = oracle.lift(&point.direction()?)?;
    a.axpy(cfg.epsilon, &lifted)?;
    Ok(point)
}

fn record<T: Scalar>(t: usize, p: &SpectralPoint<T>, clock: &Instant) -> TraceRecord<T> {
    let log = p.is_log_domain();
    TraceRecord {
        t,
        phi: if log { p.log_psi() } else { p.psi() },
        grad_norm: if log { p.log_grad_norm() } else { p.grad_norm() },
        max_residual: p.certificate(),
        wall_nanos: clock.elapsed().as_nanos() as u64,
        overflow: log,
        recompute: false,
        clamped: false,
    }
}

fn stop_met<T: Scalar>(p: &SpectralPoint<T>, rule: &StopRule<T>) -> bool {
    match *rule {
        StopRule::PotentialBelow(th) => p.log_psi() <= th.ln(),
        StopRule::MaxResidualBelow(d) => p.certificate() <= d,
        StopRule::IterBudget => false,
    }
}

/// Descent on the spectral potential `Ψ_λ` from `a1`, querying the oracle
/// every iteration. The trace's `phi` column holds `Ψ_λ` and
/// `max_residual` holds the certificate `max_k |1 − λ_k(O(A_t))|`.
pub fn run_spectral_gd<T: Scalar>(
    oracle: &SpectralOracle<T>,
    a1: SymMatrix<T>,
    cfg: &SolverConfig<T>,
) -> Result<Solution<T>, SolveError<T>> {
    cfg.validate(Algorithm::Spectral, oracle.dim())?;
    check_dim(oracle.dim(), a1.dim())?;
    let mut a = a1;
    let clock = Instant::now();
    let mut trace = ConvergenceTrace::new();
    let mut t = 1;
    let mut steps = 0;
    let (termination, last) = loop {
        let point = SpectralPoint::at(oracle, &a, cfg.lambda)?;
        if t % cfg.log_every == 0 || t == 1 {
            trace.push(record(t, &point, &clock));
        }
        if stop_met(&point, &cfg.stop_rule) {
            break (Termination::StopRule, point);
        }
        if steps >= cfg.max_iters {
            let term = match cfg.stop_rule {
                StopRule::IterBudget => Termination::StopRule,
                _ => Termination::BudgetExhausted,
            };
            break (term, point);
        }
        let direction = match point.direction() {
            Ok(d) => d,
            Err(Error::AlreadyStationary) => break (Termination::Stationary, point),
            Err(e) => return Err(e.into()),
        };
        a.axpy(cfg.epsilon, &oracle.lift(&direction)?)?;
        steps += 1;
        t += 1;
    };
    trace.push(record(t, &last, &clock));
    let residuals = last.oracle_eig.values.iter().map(|&y| T::one() - y).collect();
    Solution::finish(a, trace, steps, residuals, termination, cfg.max_iters)
}
