use crate::error::{check_dim, Error, OverflowSite, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// `sinh(λz_i)` and `cosh(λz_i)` scaled by a common factor `e^{-shift}`.
///
/// `shift` is zero unless `λ·max|z_i|` exceeds [`Scalar::log_domain_threshold`],
/// in which case it equals `λ·max|z_i|` so every scaled value lies in `[-1, 1]`
/// up to rounding. Ratios between entries are exact either way, which is what
/// normalized descent directions need.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledHyperbolics<T> {
    pub shift: T,
    pub sinh: Vec<T>,
    pub cosh: Vec<T>,
}

impl<T: Scalar> ScaledHyperbolics<T> {
    pub fn new(z: &[T], lambda: T) -> Self {
        let peak = z.iter().fold(T::zero(), |m, &v| m.max((lambda * v).abs()));
        if peak <= T::log_domain_threshold() {
            let sinh = z.iter().map(|&v| (lambda * v).sinh()).collect();
            let cosh = z.iter().map(|&v| (lambda * v).cosh()).collect();
            return Self { shift: T::zero(), sinh, cosh };
        }
        let half = T::lit(0.5);
        let mut sinh = Vec::with_capacity(z.len());
        let mut cosh = Vec::with_capacity(z.len());
        for &v in z {
            let x = lambda * v;
            let hi = (x.abs() - peak).exp() * half;
            let lo = (-x.abs() - peak).exp() * half;
            cosh.push(hi + lo);
            sinh.push(if x < T::zero() { lo - hi } else { hi - lo });
        }
        Self { shift: peak, sinh, cosh }
    }

    pub fn len(&self) -> usize {
        self.sinh.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sinh.is_empty()
    }

    pub fn is_shifted(&self) -> bool {
        self.shift > T::zero()
    }

    /// `ln Σ cosh(λz_i)`, finite whenever the residuals are.
    pub fn log_sum_cosh(&self) -> T {
        self.shift + self.cosh.iter().copied().sum::<T>().ln()
    }

    /// `Σ cosh(λz_i)`; may be `+∞` when shifted.
    pub fn sum_cosh(&self) -> T {
        self.cosh.iter().copied().sum::<T>() * self.shift.exp()
    }

    /// `(Σ ŝ_i²)^{1/2}` of the scaled sinh values, computed without overflow.
    pub fn scaled_orthogonal_norm(&self) -> T {
        stable_norm(&self.sinh)
    }

    /// `(Σ_{i,j} w_ij² ŝ_i ŝ_j)^{1/2}` of the scaled sinh values. A negative
    /// quadratic form (round-off only) is clamped to zero and reported.
    pub fn scaled_general_norm(&self, gram: &Matrix<T>) -> Result<(T, bool)> {
        check_dim(self.len(), gram.rows())?;
        check_dim(self.len(), gram.cols())?;
        let peak = self.sinh.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        if peak == T::zero() {
            return Ok((T::zero(), false));
        }
        let s: Vec<T> = self.sinh.iter().map(|&v| v / peak).collect();
        let mut q = T::zero();
        for (i, &si) in s.iter().enumerate() {
            let row = gram.row(i);
            let mut acc = T::zero();
            for (&w, &sj) in row.iter().zip(&s) {
                acc = acc + w * w * sj;
            }
            q = q + si * acc;
        }
        if q < T::zero() {
            Ok((T::zero(), true))
        } else {
            Ok((peak * q.sqrt(), false))
        }
    }

    /// Natural log of `λ·e^{shift}·scaled`, i.e. of an unscaled gradient norm.
    pub fn log_unscaled(&self, lambda: T, scaled: T) -> T {
        lambda.ln() + self.shift + scaled.ln()
    }

    pub fn unscaled(&self, lambda: T, scaled: T) -> T {
        lambda * scaled * self.shift.exp()
    }
}

pub(crate) fn stable_norm<T: Scalar>(v: &[T]) -> T {
    let peak = v.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    if peak == T::zero() || !peak.is_finite() {
        return peak;
    }
    peak * v.iter().map(|&x| (x / peak) * (x / peak)).sum::<T>().sqrt()
}

/// Overflow error pointing at the residual with the largest magnitude.
pub(crate) fn residual_overflow<T: Scalar>(z: &[T]) -> Error {
    let (index, residual) = z
        .iter()
        .enumerate()
        .fold((0, T::zero()), |(bi, bv), (i, &v)| if v.abs() > bv.abs() { (i, v) } else { (bi, bv) });
    Error::Overflow(OverflowSite::Residual { index, residual: residual.to_f64_lossy() })
}
