#![allow(dead_code)]

use matsense::linalg::{Matrix, SymMatrix};
use matsense::measurements::{gen_ground_truth, gen_orthogonal, gen_rho_bounded, GroundTruth, Spectrum};
use matsense::solvers::ConvergenceTrace;
use matsense::{MeasurementSet, Regime};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_sym(n: usize, scale: f64, rng: &mut impl Rng) -> SymMatrix<f64> {
    let m = Matrix::from_fn(n, n, |_, _| rng.random_range(-scale..scale));
    SymMatrix::from_matrix(m).unwrap()
}

pub fn orthogonal_instance(n: usize, m: usize, lo: f64, hi: f64, seed: u64) -> (GroundTruth<f64>, MeasurementSet<f64>) {
    let gt = gen_ground_truth(n, &Spectrum::Uniform { lo, hi }, seed).unwrap();
    let ms = gen_orthogonal(n, m, &gt, seed).unwrap();
    (gt, ms)
}

pub fn rho_instance(n: usize, m: usize, rho: f64, seed: u64) -> (GroundTruth<f64>, MeasurementSet<f64>) {
    let gt = gen_ground_truth(n, &Spectrum::Uniform { lo: 0.5, hi: 4.0 }, seed).unwrap();
    let ms = gen_rho_bounded(n, m, rho, &gt, seed).unwrap();
    (gt, ms)
}

/// Coordinate vectors `e_0..e_{m-1}` in dimension `n` with the given targets.
pub fn coordinate_instance(n: usize, b: &[f64], regime: Regime<f64>) -> MeasurementSet<f64> {
    let u = Matrix::from_fn(b.len(), n, |i, j| if i == j { 1.0 } else { 0.0 });
    MeasurementSet::new(u, b.to_vec(), regime).unwrap()
}

/// Largest `|a_i − b_i| / max(‖b‖_∞, 1e-300)`.
pub fn rel_max_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

#[derive(Debug, Clone, Copy)]
pub enum DecayForm {
    /// `Φ' ≤ (1 − 0.9ελ/√k)Φ + ελ√k` when `Φ > k`, else `Φ' ≤ (1 + 0.9ελ/√k)Φ − 0.8ελ√k`.
    TwoBranch,
    /// `Φ' ≤ (1 − 0.9ελ/√k)Φ + ελ√k` at every step.
    Single,
}

/// Steps `t → t+1` of the trace that break the decay inequality. Pairs of
/// records that are not consecutive or were logged in the log domain are
/// skipped; the count of checked pairs is returned alongside.
pub fn decay_violations(
    trace: &ConvergenceTrace<f64>,
    k: usize,
    epsilon: f64,
    lambda: f64,
    form: DecayForm,
) -> (Vec<usize>, usize) {
    let el = epsilon * lambda;
    let sk = (k as f64).sqrt();
    let mut bad = Vec::new();
    let mut checked = 0;
    for w in trace.records().windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if b.t != a.t + 1 || a.overflow || b.overflow {
            continue;
        }
        checked += 1;
        let bound = match form {
            DecayForm::TwoBranch if a.phi <= k as f64 => (1.0 + 0.9 * el / sk) * a.phi - 0.8 * el * sk,
            _ => (1.0 - 0.9 * el / sk) * a.phi + el * sk,
        };
        if b.phi > bound + 1e-12 * bound.abs() {
            bad.push(a.t);
        }
    }
    (bad, checked)
}
