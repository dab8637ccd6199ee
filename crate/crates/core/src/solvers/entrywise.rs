use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::state::Iterate;
use super::{
    Algorithm, ConvergenceTrace, NormMode, SolveError, Solution, SolverConfig, SolverState, StopRule, Termination,
    TraceRecord,
};
use crate::error::{invalid, Error, Result};
use crate::linalg::SymMatrix;
use crate::measurements::MeasurementSet;
use crate::scalar::Scalar;

/// `A₁ = τ·I` with `τ = max_i b_i`.
pub fn init_iterate<T: Scalar>(ms: &MeasurementSet<T>) -> Result<SymMatrix<T>> {
    let tau = ms
        .targets()
        .iter()
        .copied()
        .reduce(T::max)
        .ok_or_else(|| invalid("an instance needs at least one measurement"))?;
    Ok(SymMatrix::scaled_identity(ms.n(), tau))
}

/// One full gradient step `A ← A − ε·∇Φ/‖∇Φ‖_F`, followed by a full
/// recomputation of the residuals.
pub fn gd_step<T: Scalar>(state: &mut SolverState<T>, ms: &MeasurementSet<T>, cfg: &SolverConfig<T>) -> Result<()> {
    if state.is_stationary() {
        return Err(Error::AlreadyStationary);
    }
    let s = &state.hyp.sinh;
    match &mut state.iterate {
        Iterate::Dense(a) => {
            let g = ms.weighted_outer_sum(s)?;
            let norm = g.frobenius_norm();
            if !(norm > T::zero()) {
                return Err(Error::AlreadyStationary);
            }
            a.axpy(-cfg.epsilon / norm, &g)?;
        }
        Iterate::Deferred { coeffs, .. } => {
            let (norm, _) = state.hyp.scaled_general_norm(ms.gram())?;
            if !(norm > T::zero()) {
                return Err(Error::AlreadyStationary);
            }
            let step = cfg.epsilon / norm;
            for (c, &si) in coeffs.iter_mut().zip(s) {
                *c = *c - step * si;
            }
        }
    }
    state.z = state.residuals_from_iterate(ms)?;
    state.t += 1;
    state.fresh = true;
    state.refresh(ms)
}

/// Draws `B` distinct indices uniformly at random (Fisher–Yates prefix).
pub fn sample_batch<T: Scalar>(state: &mut SolverState<T>, batch: usize, rng: &mut impl Rng) -> Vec<usize> {
    let (chosen, _) = state.perm.partial_shuffle(rng, batch);
    chosen.to_vec()
}

fn check_batch(batch: &[usize], m: usize) -> Result<()> {
    if batch.is_empty() {
        return Err(invalid("batch must be non-empty"));
    }
    match batch.iter().find(|&&i| i >= m) {
        Some(i) => Err(invalid(format!("batch index {i} out of range for m = {m}"))),
        None => Ok(()),
    }
}

/// Coefficients `−ε·(m/B)·λ sinh(λz_j)/‖∇Φ‖_F` for `j` in the batch.
fn batch_coefficients<T: Scalar>(state: &SolverState<T>, m: usize, batch: &[usize], epsilon: T, norm: T) -> Vec<T> {
    let scale = epsilon * T::lit(m as f64) / (T::lit(batch.len() as f64) * norm);
    batch.iter().map(|&j| -scale * state.hyp.sinh[j]).collect()
}

/// One stochastic step for orthonormal measurements on a random batch.
pub fn sgd_step_orthogonal<T: Scalar>(
    state: &mut SolverState<T>,
    ms: &MeasurementSet<T>,
    cfg: &SolverConfig<T>,
    rng: &mut impl Rng,
) -> Result<()> {
    if state.is_stationary() {
        return Err(Error::AlreadyStationary);
    }
    let batch = sample_batch(state, cfg.batch, rng);
    sgd_step_orthogonal_on(state, ms, cfg, &batch)
}

/// [`sgd_step_orthogonal`] on a given batch.
///
/// The iterate moves by the stochastic gradient normalized by the full
/// gradient norm; only `z_j` for `j` in the batch change.
pub fn sgd_step_orthogonal_on<T: Scalar>(
    state: &mut SolverState<T>,
    ms: &MeasurementSet<T>,
    cfg: &SolverConfig<T>,
    batch: &[usize],
) -> Result<()> {
    check_batch(batch, ms.m())?;
    if state.is_stationary() {
        return Err(Error::AlreadyStationary);
    }
    let norm = match state.mode {
        NormMode::Orthogonal => state.scaled_norm,
        NormMode::Gram => state.hyp.scaled_orthogonal_norm(),
    };
    let c = batch_coefficients(state, ms.m(), batch, cfg.epsilon, norm);
    state.apply(ms, batch, &c)?;
    for (&j, &cj) in batch.iter().zip(&c) {
        state.z[j] = state.z[j] + cj;
    }
    state.t += 1;
    state.fresh = false;
    state.refresh(ms)
}

/// One stochastic step for general measurements on a random batch.
pub fn sgd_step_general<T: Scalar>(
    state: &mut SolverState<T>,
    ms: &MeasurementSet<T>,
    cfg: &SolverConfig<T>,
    rng: &mut impl Rng,
) -> Result<()> {
    if state.is_stationary() {
        return Err(Error::AlreadyStationary);
    }
    let batch = sample_batch(state, cfg.batch, rng);
    sgd_step_general_on(state, ms, cfg, &batch)
}

/// [`sgd_step_general`] on a given batch: every `z_i` moves by
/// `Σ_{j∈B} c_j·w_ij²`.
pub fn sgd_step_general_on<T: Scalar>(
    state: &mut SolverState<T>,
    ms: &MeasurementSet<T>,
    cfg: &SolverConfig<T>,
    batch: &[usize],
) -> Result<()> {
    check_batch(batch, ms.m())?;
    if state.is_stationary() {
        return Err(Error::AlreadyStationary);
    }
    let w = ms.gram();
    let norm = match state.mode {
        NormMode::Gram => state.scaled_norm,
        NormMode::Orthogonal => state.hyp.scaled_general_norm(w)?.0,
    };
    let c = batch_coefficients(state, ms.m(), batch, cfg.epsilon, norm);
    state.apply(ms, batch, &c)?;
    for (i, zi) in state.z.iter_mut().enumerate() {
        let row = w.row(i);
        let mut d = T::zero();
        for (&j, &cj) in batch.iter().zip(&c) {
            d = d + cj * row[j] * row[j];
        }
        *zi = *zi + d;
    }
    state.t += 1;
    state.fresh = false;
    state.refresh(ms)
}

fn stop_met<T: Scalar>(state: &SolverState<T>, rule: &StopRule<T>) -> bool {
    match *rule {
        StopRule::PotentialBelow(th) => state.log_phi() <= th.ln(),
        StopRule::MaxResidualBelow(d) => state.max_residual() <= d,
        StopRule::IterBudget => false,
    }
}

fn record<T: Scalar>(state: &SolverState<T>, clock: &Instant, recompute: bool) -> TraceRecord<T> {
    let log = state.is_log_domain();
    TraceRecord {
        t: state.t,
        phi: if log { state.log_phi() } else { state.phi() },
        grad_norm: if log { state.log_grad_norm() } else { state.grad_norm() },
        max_residual: state.max_residual(),
        wall_nanos: clock.elapsed().as_nanos() as u64,
        overflow: log,
        recompute,
        clamped: state.clamped,
    }
}

/// Full gradient descent from `A₁ = τI`.
pub fn run_gd<T: Scalar>(ms: &MeasurementSet<T>, cfg: &SolverConfig<T>) -> Result<Solution<T>, SolveError<T>> {
    run_entrywise(ms, cfg, Algorithm::Gd)
}

/// Stochastic gradient descent with the orthogonal residual recurrence.
pub fn run_sgd<T: Scalar>(ms: &MeasurementSet<T>, cfg: &SolverConfig<T>) -> Result<Solution<T>, SolveError<T>> {
    run_entrywise(ms, cfg, Algorithm::Sgd)
}

/// Stochastic gradient descent with Gram-matrix residual maintenance.
pub fn run_sgd_general<T: Scalar>(
    ms: &MeasurementSet<T>,
    cfg: &SolverConfig<T>,
) -> Result<Solution<T>, SolveError<T>> {
    run_entrywise(ms, cfg, Algorithm::SgdGeneral)
}

fn run_entrywise<T: Scalar>(
    ms: &MeasurementSet<T>,
    cfg: &SolverConfig<T>,
    algorithm: Algorithm,
) -> Result<Solution<T>, SolveError<T>> {
    cfg.validate(algorithm, ms.m())?;
    let mode = match algorithm {
        Algorithm::Gd => NormMode::for_regime(ms.regime()),
        Algorithm::Sgd => NormMode::Orthogonal,
        Algorithm::SgdGeneral => NormMode::Gram,
        Algorithm::Spectral => return Err(invalid("spectral descent is run through run_spectral_gd").into()),
    };
    let mut state = SolverState::new(ms, init_iterate(ms)?, cfg.lambda, cfg.storage, mode)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let clock = Instant::now();
    let mut trace = ConvergenceTrace::new();
    trace.push(record(&state, &clock, false));

    let mut steps = 0;
    let termination = loop {
        if stop_met(&state, &cfg.stop_rule) && !state.fresh {
            state.recompute(ms)?;
            trace.push(record(&state, &clock, true));
        }
        if stop_met(&state, &cfg.stop_rule) {
            break Termination::StopRule;
        }
        if steps >= cfg.max_iters {
            break match cfg.stop_rule {
                StopRule::IterBudget => Termination::StopRule,
                _ => Termination::BudgetExhausted,
            };
        }
        let stepped = match algorithm {
            Algorithm::Gd => gd_step(&mut state, ms, cfg),
            Algorithm::Sgd => sgd_step_orthogonal(&mut state, ms, cfg, &mut rng),
            _ => sgd_step_general(&mut state, ms, cfg, &mut rng),
        };
        match stepped {
            Ok(()) => {}
            Err(Error::AlreadyStationary) => break Termination::Stationary,
            Err(e) => return Err(e.into()),
        }
        steps += 1;
        let recompute = matches!(cfg.recompute_every, Some(k) if !state.fresh && steps % k == 0);
        if recompute {
            state.recompute(ms)?;
        }
        if recompute || state.t % cfg.log_every == 0 {
            trace.push(record(&state, &clock, recompute));
        }
    };

    let recompute = !state.fresh;
    if recompute {
        state.recompute(ms)?;
    }
    trace.push(record(&state, &clock, recompute));
    let residuals = state.z.clone();
    let iterate = state.into_iterate(ms)?;
    Solution::finish(iterate, trace, steps, residuals, termination, cfg.max_iters)
}
