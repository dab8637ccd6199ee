use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{StandardNormal, Uniform};

use super::{rho_limit, GroundTruth, MeasurementSet, Regime};
use crate::error::{invalid, Error, Result};
use crate::linalg::{dot, Matrix, SymMatrix};
use crate::scalar::Scalar;

/// Consecutive rejections tolerated per vector before giving up.
pub const RHO_RETRY_BUDGET: usize = 10_000;

const STREAM_GROUND_TRUTH: u64 = 1;
const STREAM_ORTHOGONAL: u64 = 2;
const STREAM_RHO: u64 = 3;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian<T: Scalar>(rng: &mut impl Rng) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

/// Eigenvalue choice for [`gen_ground_truth`].
#[derive(Debug, Clone, PartialEq)]
pub enum Spectrum<T> {
    /// `n` eigenvalues drawn uniformly from `[lo, hi]`.
    Uniform { lo: T, hi: T },
    Explicit(Vec<T>),
}

/// How the eigenbasis of a generated ground truth is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Basis {
    /// Haar-distributed orthogonal matrix, `O(n³)`.
    #[default]
    Haar,
    /// Product of `reflectors` random Householder reflections, `O(k·n²)`.
    /// Intended for large `n` where the Haar construction is too slow.
    Householder { reflectors: usize },
}

/// The first `k` columns of a Haar-distributed `n×n` orthogonal matrix,
/// returned as a `k×n` matrix whose rows are those columns.
///
/// Householder QR of an `n×k` Gaussian matrix with the sign of `diag(R)`
/// folded into `Q`; costs `O(n·k²)`.
fn haar_rows<T: Scalar>(n: usize, k: usize, rng: &mut impl Rng) -> Matrix<T> {
    debug_assert!(k <= n);
    let mut cols: Vec<Vec<T>> = (0..k).map(|_| (0..n).map(|_| gaussian(rng)).collect()).collect();
    let mut reflectors: Vec<Vec<T>> = Vec::with_capacity(k);
    let mut signs = Vec::with_capacity(k);
    let two = T::lit(2.0);
    for j in 0..k {
        let x = &cols[j][j..];
        let norm = x.iter().map(|&v| v * v).sum::<T>().sqrt();
        let alpha = if x[0] > T::zero() { -norm } else { norm };
        let mut v = x.to_vec();
        v[0] = v[0] - alpha;
        let vn = v.iter().map(|&e| e * e).sum::<T>().sqrt();
        if vn > T::zero() {
            v.iter_mut().for_each(|e| *e = *e / vn);
        } else {
            v.iter_mut().for_each(|e| *e = T::zero());
        }
        for col in cols.iter_mut().skip(j) {
            let tail = &mut col[j..];
            let p = two * dot(&v, tail);
            tail.iter_mut().zip(&v).for_each(|(c, &vi)| *c = *c - p * vi);
        }
        signs.push(if alpha < T::zero() { -T::one() } else { T::one() });
        reflectors.push(v);
    }

    let mut out = Matrix::zeros(k, n);
    for c in 0..k {
        let mut q = vec![T::zero(); n];
        q[c] = T::one();
        for j in (0..k).rev() {
            let v = &reflectors[j];
            let tail = &mut q[j..];
            let p = two * dot(v, tail);
            tail.iter_mut().zip(v).for_each(|(e, &vi)| *e = *e - p * vi);
        }
        for (dst, &src) in out.row_mut(c).iter_mut().zip(&q) {
            *dst = src * signs[c];
        }
    }
    out
}

/// A Haar-distributed orthogonal matrix; row `i` is the `i`-th basis vector.
pub fn random_orthogonal<T: Scalar>(n: usize, rng: &mut impl Rng) -> Matrix<T> {
    haar_rows(n, n, rng)
}

fn spectrum_values<T: Scalar>(n: usize, spectrum: &Spectrum<T>, rng: &mut impl Rng) -> Result<Vec<T>> {
    match spectrum {
        Spectrum::Uniform { lo, hi } => {
            let (lo, hi) = (lo.to_f64_lossy(), hi.to_f64_lossy());
            if !(lo > 0.0) || !hi.is_finite() || hi < lo {
                return Err(invalid(format!("uniform spectrum needs 0 < lo ≤ hi, got [{lo}, {hi}]")));
            }
            let dist = Uniform::new_inclusive(lo, hi).map_err(|e| invalid(e.to_string()))?;
            Ok((0..n).map(|_| T::lit(rng.sample(dist))).collect())
        }
        Spectrum::Explicit(values) => {
            if values.len() != n {
                return Err(invalid(format!("explicit spectrum has {} values for n = {n}", values.len())));
            }
            if let Some(v) = values.iter().find(|v| !(**v > T::zero()) || !v.is_finite()) {
                return Err(invalid(format!("spectrum must be positive and finite, found {v}")));
            }
            Ok(values.clone())
        }
    }
}

/// `A⋆ = Q·Λ·Qᵀ` with a Haar `Q`.
pub fn gen_ground_truth<T: Scalar>(n: usize, spectrum: &Spectrum<T>, seed: u64) -> Result<GroundTruth<T>> {
    gen_ground_truth_with_basis(n, spectrum, Basis::Haar, seed)
}

pub fn gen_ground_truth_with_basis<T: Scalar>(
    n: usize,
    spectrum: &Spectrum<T>,
    basis: Basis,
    seed: u64,
) -> Result<GroundTruth<T>> {
    if n == 0 {
        return Err(invalid("dimension must be positive"));
    }
    let mut rng = rng_for(seed, STREAM_GROUND_TRUTH);
    let lambda = spectrum_values(n, spectrum, &mut rng)?;
    let a = match basis {
        Basis::Haar => {
            let q = random_orthogonal::<T>(n, &mut rng);
            // Rows of q are the eigenvectors: A = qᵀ Λ q.
            let scaled = Matrix::from_fn(n, n, |i, j| q[(i, j)] * lambda[i]);
            let qt = q.transpose();
            SymMatrix::from_matrix(qt.matmul(&scaled)?)?
        }
        Basis::Householder { reflectors } => {
            let mut a = SymMatrix::from_diag(&lambda).into_matrix();
            for _ in 0..reflectors {
                let mut v: Vec<T> = (0..n).map(|_| gaussian(&mut rng)).collect();
                let vn = v.iter().map(|&e| e * e).sum::<T>().sqrt();
                if !(vn > T::zero()) {
                    continue;
                }
                v.iter_mut().for_each(|e| *e = *e / vn);
                reflect_two_sided(&mut a, &v);
            }
            SymMatrix::from_matrix(a)?
        }
    };
    Ok(GroundTruth::from_trusted(a))
}

/// `M ← H·M·H` for `H = I − 2vvᵀ`, `M` symmetric and `v` unit.
fn reflect_two_sided<T: Scalar>(a: &mut Matrix<T>, v: &[T]) {
    let n = v.len();
    let mv: Vec<T> = (0..n).map(|i| dot(a.row(i), v)).collect();
    let vmv = dot(v, &mv);
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    for i in 0..n {
        let (vi, mvi) = (v[i], mv[i]);
        let row = a.row_mut(i);
        for j in 0..n {
            row[j] = row[j] - two * (vi * mv[j] + mvi * v[j]) + four * vmv * vi * v[j];
        }
    }
}

/// `m` orthonormal sensing vectors: the first `m` columns of a Haar matrix.
pub fn gen_orthogonal<T: Scalar>(n: usize, m: usize, a_star: &GroundTruth<T>, seed: u64) -> Result<MeasurementSet<T>> {
    if m > n {
        return Err(invalid(format!("m > n: cannot draw {m} orthogonal vectors in dimension {n}")));
    }
    if m == 0 {
        return Err(invalid("at least one measurement is required"));
    }
    if a_star.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a_star.dim() });
    }
    let mut rng = rng_for(seed, STREAM_ORTHOGONAL);
    let u = haar_rows::<T>(n, m, &mut rng);
    MeasurementSet::measure(u, a_star.matrix(), Regime::Orthogonal)
}

/// `m` unit vectors with pairwise `|⟨u_i, u_j⟩| ≤ ρ`.
///
/// Each candidate is a Gaussian draw whose component inside the span of the
/// already accepted vectors is shrunk by `s = min(1, ρ√n/4)` before
/// normalization; violators are redrawn. With `s = 1` this is plain Gaussian
/// rejection sampling.
pub fn gen_rho_bounded<T: Scalar>(
    n: usize,
    m: usize,
    rho: T,
    a_star: &GroundTruth<T>,
    seed: u64,
) -> Result<MeasurementSet<T>> {
    if m == 0 || n == 0 {
        return Err(invalid("n and m must be positive"));
    }
    let limit = rho_limit::<T>(m);
    if !(rho > T::zero()) || rho > limit * T::lit(1.0 + 1e-12) {
        return Err(invalid(format!("rho must lie in (0, 1/(10m)] = (0, {limit}], got {rho}")));
    }
    if a_star.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a_star.dim() });
    }
    let mut rng = rng_for(seed, STREAM_RHO);
    let shrink = T::one().min(rho * T::lit(n as f64).sqrt() / T::lit(4.0));
    let keep = T::one() - shrink;

    let mut accepted: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut span: Vec<Vec<T>> = Vec::with_capacity(m.min(n));
    for index in 0..m {
        let mut rejections = 0;
        let v = loop {
            let mut v: Vec<T> = (0..n).map(|_| gaussian(&mut rng)).collect();
            if keep > T::zero() {
                let coeffs: Vec<T> = span.iter().map(|q| dot(q, &v)).collect();
                for (q, &c) in span.iter().zip(&coeffs) {
                    v.iter_mut().zip(q).for_each(|(e, &qi)| *e = *e - keep * c * qi);
                }
            }
            let vn = v.iter().map(|&e| e * e).sum::<T>().sqrt();
            if vn > T::zero() {
                v.iter_mut().for_each(|e| *e = *e / vn);
                if accepted.iter().all(|u| dot(u, &v).abs() <= rho) {
                    break v;
                }
            }
            rejections += 1;
            if rejections >= RHO_RETRY_BUDGET {
                return Err(Error::GenerationFailed { index, attempts: rejections });
            }
        };
        extend_orthonormal(&mut span, &v);
        accepted.push(v);
    }
    let u = Matrix::from_rows(&accepted)?;
    MeasurementSet::measure(u, a_star.matrix(), Regime::RhoBounded(rho))
}

/// Adds the part of `v` orthogonal to `span` (two Gram-Schmidt passes).
fn extend_orthonormal<T: Scalar>(span: &mut Vec<Vec<T>>, v: &[T]) {
    let mut w = v.to_vec();
    for _ in 0..2 {
        for q in span.iter() {
            let c = dot(q, &w);
            w.iter_mut().zip(q).for_each(|(e, &qi)| *e = *e - c * qi);
        }
    }
    let wn = w.iter().map(|&e| e * e).sum::<T>().sqrt();
    if wn > T::lit(1e-8) {
        w.iter_mut().for_each(|e| *e = *e / wn);
        span.push(w);
    }
}
