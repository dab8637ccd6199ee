mod common;

use common::*;
use matsense::linalg::{eig, Matrix, SymMatrix};
use matsense::measurements::{gen_ground_truth, Spectrum};
use matsense::potential::{phi_grad, phi_grad_batch, psi, spectral_certificate, PotentialParams};
use matsense::solvers::*;
use matsense::{Error, GroundTruth, MeasurementSet, Regime, SpectralOracle};

fn cfg_with(lambda: f64, epsilon: f64, batch: usize) -> SolverConfig<f64> {
    SolverConfig { lambda, epsilon, batch, ..SolverConfig::gd_default(1, 0.1) }
}

#[test]
fn init_iterate_uses_largest_target() {
    let ms = coordinate_instance(3, &[1.0, 2.0, 3.0], Regime::Orthogonal);
    assert_eq!(init_iterate(&ms).unwrap(), SymMatrix::scaled_identity(3, 3.0));
}

#[test]
fn init_iterate_solves_uniform_targets() {
    let gt = GroundTruth::new(SymMatrix::<f64>::scaled_identity(6, 2.5)).unwrap();
    let ms = matsense::measurements::gen_orthogonal(6, 4, &gt, 3).unwrap();
    let z = ms.residuals(&init_iterate(&ms).unwrap()).unwrap();
    assert!(z.iter().all(|v| v.abs() < 1e-12));
}

#[test]
fn initial_residual_within_twice_r() {
    let (_, ms) = orthogonal_instance(16, 8, 0.5, 2.0, 11);
    let z = ms.residuals(&init_iterate(&ms).unwrap()).unwrap();
    let max = z.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(max <= 2.0 * ms.r_bound());
}

#[test]
fn single_measurement_gd_step_closed_form() {
    let ms = coordinate_instance(2, &[0.0], Regime::Orthogonal);
    let cfg = cfg_with(1.0, 0.005, 1);
    let mut state = SolverState::new(&ms, SymMatrix::identity(2), 1.0, IterateStorage::Dense, NormMode::Orthogonal).unwrap();
    gd_step(&mut state, &ms, &cfg).unwrap();
    let expected = SymMatrix::from_diag(&[0.995, 1.0]);
    let diff = state.dense_iterate().unwrap().sub(&expected).unwrap().frobenius_norm();
    assert!(diff < 1e-15);
    assert_eq!(state.t(), 2);
}

#[test]
fn zero_residuals_are_stationary() {
    let ms = coordinate_instance(3, &[1.0, 1.0], Regime::Orthogonal);
    let cfg = cfg_with(1.0, 0.005, 2);
    let mut state = SolverState::new(&ms, SymMatrix::identity(3), 1.0, IterateStorage::Dense, NormMode::Orthogonal).unwrap();
    assert!(matches!(gd_step(&mut state, &ms, &cfg), Err(Error::AlreadyStationary)));
    let mut r = rng(0);
    assert!(matches!(sgd_step_orthogonal(&mut state, &ms, &cfg, &mut r), Err(Error::AlreadyStationary)));
    assert!(matches!(sgd_step_general(&mut state, &ms, &cfg, &mut r), Err(Error::AlreadyStationary)));
}

#[test]
fn gd_step_has_unit_length() {
    let (_, ms) = orthogonal_instance(12, 6, 0.5, 2.0, 4);
    let cfg = SolverConfig::gd_default(6, 0.1);
    for storage in [IterateStorage::Dense, IterateStorage::Deferred] {
        let mut state = SolverState::new(&ms, init_iterate(&ms).unwrap(), cfg.lambda, storage, NormMode::Orthogonal).unwrap();
        for _ in 0..5 {
            let before = state.iterate(&ms).unwrap().into_owned();
            gd_step(&mut state, &ms, &cfg).unwrap();
            let after = state.iterate(&ms).unwrap().into_owned();
            let step = after.sub(&before).unwrap().frobenius_norm();
            assert!((step - cfg.epsilon).abs() <= 1e-10 * cfg.epsilon, "{storage:?}: {step}");
            assert!(after.is_exactly_symmetric());
        }
    }
}

#[test]
fn gd_step_satisfies_combined_decay() {
    let (_, ms) = orthogonal_instance(16, 8, 0.5, 2.0, 9);
    let mut cfg = SolverConfig::gd_default(8, 0.1);
    cfg.epsilon = 0.005 / cfg.lambda;
    let p = PotentialParams::new(cfg.lambda).unwrap();
    let mut state = SolverState::new(&ms, init_iterate(&ms).unwrap(), cfg.lambda, IterateStorage::Dense, NormMode::Orthogonal).unwrap();
    let el = cfg.epsilon * cfg.lambda;
    let sm = (8f64).sqrt();
    for _ in 0..200 {
        let before = state.phi();
        gd_step(&mut state, &ms, &cfg).unwrap();
        let after = matsense::potential::phi(&ms, state.dense_iterate().unwrap(), p).unwrap();
        assert!(after - before <= -0.9 * el * (before - 8.0).abs() / sm + 0.1 * el * sm + 1e-12 * before);
    }
}

#[test]
fn full_batch_sgd_step_equals_gd_step() {
    let (_, ms) = orthogonal_instance(10, 5, 0.5, 2.0, 2);
    let cfg = SolverConfig::sgd_default(5, 5, 0.1);
    let a1 = init_iterate(&ms).unwrap();
    let mut gd = SolverState::new(&ms, a1.clone(), cfg.lambda, IterateStorage::Dense, NormMode::Orthogonal).unwrap();
    let mut sgd = gd.clone();
    gd_step(&mut gd, &ms, &cfg).unwrap();
    sgd_step_orthogonal_on(&mut sgd, &ms, &cfg, &[0, 1, 2, 3, 4]).unwrap();
    let diff = gd.dense_iterate().unwrap().sub(sgd.dense_iterate().unwrap()).unwrap().frobenius_norm();
    assert!(diff < 1e-13, "{diff}");
    assert!(rel_max_diff(sgd.residuals(), gd.residuals()) < 1e-10);
}

#[test]
fn sgd_step_maintains_residuals() {
    let (_, ms) = orthogonal_instance(8, 4, 0.5, 2.0, 5);
    let cfg = SolverConfig::sgd_default(4, 2, 0.5);
    let mut state = SolverState::new(&ms, init_iterate(&ms).unwrap(), cfg.lambda, IterateStorage::Dense, NormMode::Orthogonal).unwrap();
    let before = state.residuals().to_vec();
    let mut r = rng(17);
    let batch = sample_batch(&mut state, 2, &mut r);
    sgd_step_orthogonal_on(&mut state, &ms, &cfg, &batch).unwrap();
    let fresh = ms.residuals(state.dense_iterate().unwrap()).unwrap();
    for i in 0..4 {
        assert!((state.residuals()[i] - fresh[i]).abs() < 1e-10);
        if !batch.contains(&i) {
            assert_eq!(state.residuals()[i].to_bits(), before[i].to_bits());
        }
    }
}

#[test]
fn sgd_step_length_matches_batch_ratio() {
    let (_, ms) = orthogonal_instance(12, 8, 0.5, 2.0, 8);
    let cfg = SolverConfig::sgd_default(8, 3, 0.1);
    let p = PotentialParams::new(cfg.lambda).unwrap();
    let mut state = SolverState::new(&ms, init_iterate(&ms).unwrap(), cfg.lambda, IterateStorage::Dense, NormMode::Orthogonal).unwrap();
    let before = state.dense_iterate().unwrap().clone();
    let batch = [1, 4, 6];
    let full = phi_grad(&ms, &before, p).unwrap().frobenius_norm();
    let partial = phi_grad_batch(&ms, &before, &batch, p).unwrap().frobenius_norm();
    sgd_step_orthogonal_on(&mut state, &ms, &cfg, &batch).unwrap();
    let step = state.dense_iterate().unwrap().sub(&before).unwrap().frobenius_norm();
    let expected = cfg.epsilon * partial / full;
    assert!((step - expected).abs() <= 1e-10 * expected);
}

#[test]
fn general_step_on_identity_gram_matches_orthogonal() {
    let ms = coordinate_instance(6, &[0.3, 1.0, -0.4, 2.0], Regime::Orthogonal);
    let cfg = cfg_with(2.0, 0.001, 2);
    let a1 = SymMatrix::identity(6);
    let mut orth = SolverState::new(&ms, a1.clone(), 2.0, IterateStorage::Dense, NormMode::Orthogonal).unwrap();
    let mut gen = SolverState::new(&ms, a1, 2.0, IterateStorage::Dense, NormMode::Gram).unwrap();
    for batch in [[0, 2], [3, 1], [2, 3]] {
        sgd_step_orthogonal_on(&mut orth, &ms, &cfg, &batch).unwrap();
        sgd_step_general_on(&mut gen, &ms, &cfg, &batch).unwrap();
        assert_eq!(orth.residuals(), gen.residuals());
    }
}

#[test]
fn general_step_maintains_residuals() {
    let (_, ms) = rho_instance(64, 8, 1.0 / 80.0, 6);
    let cfg = SolverConfig::sgd_default(8, 3, 0.2);
    let mut state = SolverState::new(&ms, init_iterate(&ms).unwrap(), cfg.lambda, IterateStorage::Dense, NormMode::Gram).unwrap();
    sgd_step_general_on(&mut state, &ms, &cfg, &[5, 0, 3]).unwrap();
    let fresh = ms.residuals(state.dense_iterate().unwrap()).unwrap();
    for (a, b) in state.residuals().iter().zip(&fresh) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn general_step_leaves_decoupled_residuals() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let u = Matrix::from_rows(&[[1.0, 0.0, 0.0], [s, s, 0.0], [0.0, 0.0, 1.0]]).unwrap();
    let ms = MeasurementSet::new(u, vec![0.0, 0.5, 3.0], Regime::RhoBounded(0.9)).unwrap();
    let cfg = cfg_with(1.0, 0.001, 2);
    let mut state = SolverState::new(&ms, SymMatrix::identity(3), 1.0, IterateStorage::Dense, NormMode::Gram).unwrap();
    let before = state.residuals()[2];
    sgd_step_general_on(&mut state, &ms, &cfg, &[0, 1]).unwrap();
    assert_eq!(state.residuals()[2].to_bits(), before.to_bits());
    assert_ne!(state.residuals()[0], -1.0);
}

#[test]
fn maintenance_survives_many_steps() {
    let (_, ms) = orthogonal_instance(32, 16, 0.5, 2.0, 21);
    let cfg = SolverConfig::sgd_default(16, 4, 0.1);
    let mut state = SolverState::new(&ms, init_iterate(&ms).unwrap(), cfg.lambda, IterateStorage::Dense, NormMode::Orthogonal).unwrap();
    let mut r = rng(3);
    for _ in 0..1000 {
        sgd_step_orthogonal(&mut state, &ms, &cfg, &mut r).unwrap();
    }
    let fresh = ms.residuals(state.dense_iterate().unwrap()).unwrap();
    assert!(rel_max_diff(state.residuals(), &fresh) < 1e-6);
    let p = PotentialParams::new(cfg.lambda).unwrap();
    let direct = phi_grad(&ms, state.dense_iterate().unwrap(), p).unwrap().frobenius_norm();
    assert!((state.grad_norm() - direct).abs() <= 1e-6 * direct);
}

#[test]
fn deferred_storage_tracks_dense() {
    let (_, ms) = rho_instance(48, 4, 0.025, 12);
    let cfg = SolverConfig::sgd_default(4, 2, 0.2);
    let a1 = init_iterate(&ms).unwrap();
    let mut dense = SolverState::new(&ms, a1.clone(), cfg.lambda, IterateStorage::Dense, NormMode::Gram).unwrap();
    let mut lazy = SolverState::new(&ms, a1, cfg.lambda, IterateStorage::Deferred, NormMode::Gram).unwrap();
    let (mut r1, mut r2) = (rng(5), rng(5));
    for _ in 0..300 {
        sgd_step_general(&mut dense, &ms, &cfg, &mut r1).unwrap();
        sgd_step_general(&mut lazy, &ms, &cfg, &mut r2).unwrap();
    }
    assert!(rel_max_diff(lazy.residuals(), dense.residuals()) < 1e-9);
    let a = lazy.iterate(&ms).unwrap();
    let diff = a.sub(dense.dense_iterate().unwrap()).unwrap().frobenius_norm();
    assert!(diff < 1e-9, "{diff}");
}

#[test]
fn run_gd_returns_at_once_when_solved() {
    let gt = GroundTruth::new(SymMatrix::scaled_identity(8, 1.5)).unwrap();
    let ms = matsense::measurements::gen_orthogonal(8, 8, &gt, 1).unwrap();
    let sol = run_gd(&ms, &SolverConfig::gd_default(8, 0.1)).unwrap();
    assert_eq!(sol.steps, 0);
    assert_eq!(sol.trace.len(), 1);
    assert_eq!(sol.trace.records()[0].t, 1);
}

#[test]
fn run_gd_small_instance_converges() {
    let (_, ms) = orthogonal_instance(16, 8, 0.5, 2.0, 3);
    let cfg = SolverConfig::gd_default(8, 0.1);
    let sol = run_gd(&ms, &cfg).unwrap();
    assert_eq!(sol.termination, Termination::StopRule);
    let v = verify_solution(&ms, &sol.iterate, 0.1).unwrap();
    assert!(v.passed, "{v:?}");
    let (bad, checked) = decay_violations(&sol.trace, 8, cfg.epsilon, cfg.lambda, DecayForm::TwoBranch);
    assert!(checked > 0 && bad.is_empty());
}

#[test]
fn run_gd_rho_bounded_converges() {
    let (_, ms) = rho_instance(256, 6, 1.0 / 60.0, 4);
    let cfg = SolverConfig::gd_default(6, 0.1);
    let sol = run_gd(&ms, &cfg).unwrap();
    assert!(verify_solution(&ms, &sol.iterate, 0.1).unwrap().passed);
    let (bad, _) = decay_violations(&sol.trace, 6, cfg.epsilon, cfg.lambda, DecayForm::Single);
    assert!(bad.is_empty());
}

#[test]
fn budget_exhaustion_carries_partial_result() {
    let (_, ms) = orthogonal_instance(16, 8, 0.5, 2.0, 3);
    let mut cfg = SolverConfig::gd_default(8, 0.1);
    cfg.max_iters = 10;
    match run_gd(&ms, &cfg) {
        Err(SolveError::BudgetExceeded { budget, partial }) => {
            assert_eq!(budget, 10);
            assert_eq!(partial.steps, 10);
            assert_eq!(partial.trace.last().unwrap().t, 11);
        }
        other => panic!("unexpected {other:?}"),
    }
    cfg.stop_rule = StopRule::IterBudget;
    let sol = run_gd(&ms, &cfg).unwrap();
    assert_eq!(sol.steps, 10);
}

#[test]
fn max_residual_stop_rule() {
    let (_, ms) = orthogonal_instance(16, 8, 0.5, 2.0, 3);
    let mut cfg = SolverConfig::gd_default(8, 0.1);
    cfg.stop_rule = StopRule::MaxResidualBelow(0.05);
    let sol = run_gd(&ms, &cfg).unwrap();
    assert!(sol.max_residual() <= 0.05);
    assert!(verify_solution(&ms, &sol.iterate, 0.05 + 1e-9).unwrap().passed);
}

#[test]
fn full_batch_sgd_tracks_gd() {
    let (_, ms) = orthogonal_instance(12, 6, 0.5, 2.0, 14);
    let mut cfg = SolverConfig::sgd_default(6, 6, 0.1);
    cfg.recompute_every = None;
    let sgd = run_sgd(&ms, &cfg).unwrap();
    let gd = run_gd(&ms, &cfg).unwrap();
    assert_eq!(sgd.steps, gd.steps);
    let diff = sgd.iterate.sub(&gd.iterate).unwrap().frobenius_norm();
    assert!(diff < 1e-9, "{diff}");
}

#[test]
fn identity_gram_general_run_matches_sgd() {
    let ms = coordinate_instance(8, &[0.2, 0.9, 0.5, 0.1, 0.7, 0.4], Regime::Orthogonal);
    let cfg = SolverConfig::sgd_default(6, 2, 0.1);
    let a = run_sgd(&ms, &cfg).unwrap();
    let b = run_sgd_general(&ms, &cfg).unwrap();
    assert_eq!(a.steps, b.steps);
    assert_eq!(a.iterate, b.iterate);
}

#[test]
fn run_sgd_converges_and_flags_recomputes() {
    let (_, ms) = orthogonal_instance(16, 8, 0.5, 2.0, 2);
    let mut cfg = SolverConfig::sgd_default(8, 2, 0.1);
    cfg.log_every = 100;
    cfg.seed = 4;
    let sol = run_sgd(&ms, &cfg).unwrap();
    assert!(verify_solution(&ms, &sol.iterate, 0.1).unwrap().passed);
    let expected = sol.steps / DEFAULT_RECOMPUTE_EVERY;
    assert!(sol.trace.recompute_count() >= expected);
    let ts: Vec<usize> = sol.trace.iter().map(|r| r.t).collect();
    assert!(ts.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn sgd_is_deterministic_per_seed() {
    let (_, ms) = orthogonal_instance(12, 6, 0.5, 2.0, 2);
    let cfg = SolverConfig::sgd_default(6, 2, 0.2);
    let a = run_sgd(&ms, &cfg).unwrap();
    let b = run_sgd(&ms, &cfg).unwrap();
    assert_eq!(a.iterate, b.iterate);
    assert_eq!(a.steps, b.steps);
}

#[test]
fn stochastic_gradient_is_unbiased() {
    let (_, ms) = orthogonal_instance(6, 5, 0.5, 2.0, 30);
    let p = PotentialParams::new(2.0).unwrap();
    let a = init_iterate(&ms).unwrap();
    let full = phi_grad(&ms, &a, p).unwrap();
    let cfg = cfg_with(2.0, 0.001, 2);
    let mut state = SolverState::new(&ms, a.clone(), 2.0, IterateStorage::Dense, NormMode::Orthogonal).unwrap();
    let mut r = rng(99);
    let trials = 10_000;
    let n = ms.n();
    let mut sum = vec![0.0; n * n];
    let mut sum_sq = vec![0.0; n * n];
    for _ in 0..trials {
        let batch = sample_batch(&mut state, cfg.batch, &mut r);
        let g = phi_grad_batch(&ms, &a, &batch, p).unwrap();
        for (k, &v) in g.as_matrix().data().iter().enumerate() {
            sum[k] += v;
            sum_sq[k] += v * v;
        }
    }
    let t = trials as f64;
    for (k, &target) in full.as_matrix().data().iter().enumerate() {
        let mean = sum[k] / t;
        let var = (sum_sq[k] / t - mean * mean).max(0.0);
        let se = (var / t).sqrt();
        assert!((mean - target).abs() <= 3.0 * se + 1e-12, "entry {k}: {mean} vs {target} (se {se})");
    }
}

#[test]
fn median_potential_decreases_across_seeds() {
    let (_, ms) = orthogonal_instance(16, 8, 0.5, 2.0, 2);
    let mut traces = Vec::new();
    for seed in 0..20 {
        let mut cfg = SolverConfig::sgd_default(8, 2, 0.1);
        cfg.seed = seed;
        cfg.log_every = 1;
        cfg.stop_rule = StopRule::IterBudget;
        cfg.max_iters = 3000;
        traces.push(run_sgd(&ms, &cfg).unwrap().trace);
    }
    let burn_in = 100;
    let mut prev = f64::INFINITY;
    for t in (burn_in..3000).step_by(50) {
        let mut phis: Vec<f64> = traces.iter().map(|tr| tr.records()[t].phi).collect();
        phis.sort_by(f64::total_cmp);
        let median = 0.5 * (phis[9] + phis[10]);
        assert!(median <= prev * (1.0 + 1e-12), "median rose at t = {t}");
        prev = median;
    }
}

#[test]
fn verify_reports_worst_index() {
    let (gt, ms) = orthogonal_instance(10, 5, 0.5, 2.0, 6);
    let ok = verify_solution(&ms, gt.matrix(), 1e-9).unwrap();
    assert!(ok.passed && ok.max_residual < 1e-12);
    let delta = 0.05;
    let mut a = gt.matrix().clone();
    a.rank_one_update(2.0 * delta, ms.vector(0)).unwrap();
    let bad = verify_solution(&ms, &a, delta).unwrap();
    assert!(!bad.passed);
    assert_eq!(bad.worst_index, 0);
    assert!((bad.max_residual - 2.0 * delta).abs() < 1e-12);
    assert!(verify_solution(&ms, &SymMatrix::identity(3), 0.1).is_err());
}

#[test]
fn spectral_start_at_truth_is_stationary() {
    let gt = gen_ground_truth(6, &Spectrum::Uniform { lo: 0.5, hi: 2.0 }, 2).unwrap();
    let oracle = SpectralOracle::new(gt.clone()).unwrap();
    let cfg = SolverConfig::spectral_default(6, 0.1);
    let mut a = gt.matrix().clone();
    assert!(matches!(spectral_step(&oracle, &mut a, &cfg), Err(Error::AlreadyStationary)));
    let sol = run_spectral_gd(&oracle, gt.matrix().clone(), &cfg).unwrap();
    assert_eq!(sol.steps, 0);
    assert_eq!(sol.trace.last().unwrap().t, 1);
}

#[test]
fn spectral_step_on_diagonal_family() {
    let n = 5;
    let oracle = SpectralOracle::new(GroundTruth::new(SymMatrix::<f64>::identity(n)).unwrap()).unwrap();
    let cfg = SolverConfig::spectral_default(n, 0.1);
    let s = 0.3;
    let mut diag = vec![1.0; n];
    diag[0] += s;
    let mut a = SymMatrix::from_diag(&diag);
    spectral_step(&oracle, &mut a, &cfg).unwrap();
    assert!((a.get(0, 0) - (1.0 + s - cfg.epsilon)).abs() < 1e-14);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                assert!(a.get(i, j).abs() < 1e-15);
            } else if i > 0 {
                assert!((a.get(i, i) - 1.0).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn spectral_step_is_unit_in_oracle_coordinates() {
    let gt = gen_ground_truth::<f64>(8, &Spectrum::Uniform { lo: 0.5, hi: 2.0 }, 5).unwrap();
    let oracle = SpectralOracle::new(gt).unwrap();
    let cfg = SolverConfig::spectral_default(8, 0.1);
    let mut a = SymMatrix::scaled_identity(8, 1.2);
    for _ in 0..5 {
        let before = oracle.query(&a).unwrap();
        spectral_step(&oracle, &mut a, &cfg).unwrap();
        let after = oracle.query(&a).unwrap();
        let step = after.sub(&before).unwrap().frobenius_norm();
        assert!((step - cfg.epsilon).abs() <= 1e-10 * cfg.epsilon);
    }
}

#[test]
fn spectral_run_small() {
    let gt = gen_ground_truth(6, &Spectrum::Uniform { lo: 0.8, hi: 1.5 }, 8).unwrap();
    let oracle = SpectralOracle::new(gt.clone()).unwrap();
    let cfg = SolverConfig::spectral_default(6, 0.1);
    let sol = run_spectral_gd(&oracle, SymMatrix::scaled_identity(6, 1.0), &cfg).unwrap();
    let p = PotentialParams::new(cfg.lambda).unwrap();
    let final_psi = psi(&oracle, &sol.iterate, p).unwrap();
    assert!(final_psi <= 18.0);
    let delta = spectral_certificate(&oracle, &sol.iterate).unwrap();
    assert!(delta <= (18.0f64).acosh() / cfg.lambda + 1e-12);
    assert!(delta <= 0.1);
    let (bad, checked) = decay_violations(&sol.trace, 6, cfg.epsilon, cfg.lambda, DecayForm::Single);
    assert!(checked > 0 && bad.is_empty());
    let lo = gt.matrix().scale(1.0 - delta);
    let gap = eig(&sol.iterate.sub(&lo).unwrap()).unwrap().min_eigenvalue();
    assert!(gap >= -1e-8);
}

#[test]
fn invalid_configs_rejected() {
    let (_, ms) = orthogonal_instance(8, 4, 0.5, 2.0, 1);
    let mut cfg = SolverConfig::gd_default(4, 0.1);
    cfg.epsilon = 1.0;
    assert!(matches!(run_gd(&ms, &cfg), Err(SolveError::Core(Error::InvalidInput(_)))));
    let mut cfg = SolverConfig::sgd_default(4, 2, 0.1);
    cfg.batch = 0;
    assert!(run_sgd(&ms, &cfg).is_err());
}

#[test]
fn f32_gd_converges() {
    let gt = matsense::measurements::gen_ground_truth::<f32>(8, &Spectrum::Uniform { lo: 0.5, hi: 2.0 }, 3).unwrap();
    let ms = matsense::measurements::gen_orthogonal(8, 4, &gt, 3).unwrap();
    let cfg = SolverConfig::<f32>::gd_default(4, 0.2);
    let sol = run_gd(&ms, &cfg).unwrap();
    assert!(verify_solution(&ms, &sol.iterate, 0.2).unwrap().passed);
}
