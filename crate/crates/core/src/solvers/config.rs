use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scalar::Scalar;

/// When a run is considered finished.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopRule<T> {
    /// Stop once the potential (Φ or Ψ) is at most the threshold.
    PotentialBelow(T),
    /// Stop once `max_i |z_i|` (or the spectral certificate) is at most the value.
    MaxResidualBelow(T),
    /// Run exactly `max_iters` steps; exhausting the budget is success.
    IterBudget,
}

/// How the solver stores `A_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IterateStorage {
    /// A dense `n×n` matrix updated every step.
    #[default]
    Dense,
    /// `A_t = A_1 + Σ_i c_i u_iu_iᵀ` kept as coefficients. Every step is then
    /// `O(m²)`, and the dense matrix is formed once at the end in `O(mn²)`.
    Deferred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Gd,
    Sgd,
    SgdGeneral,
    Spectral,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Gd, Algorithm::Sgd, Algorithm::SgdGeneral, Algorithm::Spectral];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gd => "gd",
            Algorithm::Sgd => "sgd",
            Algorithm::SgdGeneral => "sgd-general",
            Algorithm::Spectral => "spectral",
        }
    }

    pub fn is_stochastic(self) -> bool {
        matches!(self, Algorithm::Sgd | Algorithm::SgdGeneral)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| invalid(format!("unknown algorithm '{s}' (expected gd, sgd, sgd-general or spectral)")))
    }
}

/// Constants that satisfy every step-size precondition: `λ = ln(6k)/δ`,
/// `ε_GD = 0.005/λ`, `ε_SGD = 0.005·B/(λm)`, stop at potential `≤ 3k`, where
/// `k` is `m` for the entry-wise potential and `n` for the spectral one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefaultSchedule<T> {
    pub count: usize,
    pub delta: T,
    pub lambda: T,
    pub threshold: T,
}

impl<T: Scalar> DefaultSchedule<T> {
    pub fn new(count: usize, delta: T) -> Self {
        let k = T::lit(count as f64);
        Self { count, delta, lambda: (T::lit(6.0) * k).ln() / delta, threshold: T::lit(3.0) * k }
    }

    pub fn gd_epsilon(&self) -> T {
        T::lit(0.005) / self.lambda
    }

    pub fn sgd_epsilon(&self, batch: usize) -> T {
        T::lit(0.005) * T::lit(batch as f64) / (self.lambda * T::lit(self.count as f64))
    }
}

pub const DEFAULT_GD_BUDGET: usize = 50_000;
pub const DEFAULT_SGD_BUDGET: usize = 500_000;
pub const DEFAULT_SPECTRAL_BUDGET: usize = 200_000;
pub const DEFAULT_RECOMPUTE_EVERY: usize = 512;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig<T> {
    pub lambda: T,
    pub epsilon: T,
    pub batch: usize,
    pub max_iters: usize,
    pub delta: T,
    pub seed: u64,
    pub stop_rule: StopRule<T>,
    pub log_every: usize,
    /// Rebuild the maintained residuals from scratch every this many SGD steps.
    pub recompute_every: Option<usize>,
    #[serde(default)]
    pub storage: IterateStorage,
}

impl<T: Scalar> SolverConfig<T> {
    pub fn gd_default(m: usize, delta: T) -> Self {
        let s = DefaultSchedule::new(m, delta);
        Self {
            lambda: s.lambda,
            epsilon: s.gd_epsilon(),
            batch: m,
            max_iters: DEFAULT_GD_BUDGET,
            delta,
            seed: 0,
            stop_rule: StopRule::PotentialBelow(s.threshold),
            log_every: 1,
            recompute_every: None,
            storage: IterateStorage::Dense,
        }
    }

    pub fn sgd_default(m: usize, batch: usize, delta: T) -> Self {
        let s = DefaultSchedule::new(m, delta);
        Self {
            epsilon: s.sgd_epsilon(batch),
            batch,
            max_iters: DEFAULT_SGD_BUDGET,
            recompute_every: Some(DEFAULT_RECOMPUTE_EVERY),
            ..Self::gd_default(m, delta)
        }
    }

    /// The entry-wise schedule with `m` replaced by `n`.
    pub fn spectral_default(n: usize, delta: T) -> Self {
        Self { max_iters: DEFAULT_SPECTRAL_BUDGET, batch: 1, ..Self::gd_default(n, delta) }
    }

    /// Default configuration for `algorithm` on an instance with `m`
    /// measurements in dimension `n`.
    pub fn for_algorithm(algorithm: Algorithm, n: usize, m: usize, batch: usize, delta: T) -> Self {
        match algorithm {
            Algorithm::Gd => Self::gd_default(m, delta),
            Algorithm::Sgd | Algorithm::SgdGeneral => Self::sgd_default(m, batch, delta),
            Algorithm::Spectral => Self::spectral_default(n, delta),
        }
    }

    /// Checks the step-size preconditions of `algorithm` for `m` measurements
    /// (ignored by the spectral solver).
    pub fn validate(&self, algorithm: Algorithm, m: usize) -> Result<()> {
        let finite_pos = |x: T| x > T::zero() && x.is_finite();
        if !finite_pos(self.lambda) {
            return Err(invalid(format!("lambda must be positive and finite, got {}", self.lambda)));
        }
        if !finite_pos(self.epsilon) {
            return Err(invalid(format!("epsilon must be positive and finite, got {}", self.epsilon)));
        }
        if !(self.delta > T::zero() && self.delta < T::one()) {
            return Err(invalid(format!("delta must lie in (0, 1), got {}", self.delta)));
        }
        if self.log_every == 0 {
            return Err(invalid("log_every must be at least 1"));
        }
        if self.recompute_every == Some(0) {
            return Err(invalid("recompute_every must be at least 1 when set"));
        }
        match self.stop_rule {
            StopRule::PotentialBelow(v) | StopRule::MaxResidualBelow(v) if !finite_pos(v) => {
                return Err(invalid(format!("stop threshold must be positive, got {v}")));
            }
            _ => {}
        }
        let el = self.epsilon * self.lambda;
        let slack = T::lit(1.0 + 1e-9);
        let limit = match algorithm {
            Algorithm::Gd => T::lit(0.01),
            Algorithm::Spectral => {
                if self.lambda < T::one() {
                    return Err(invalid(format!("spectral descent needs lambda >= 1, got {}", self.lambda)));
                }
                T::lit(0.01)
            }
            Algorithm::Sgd | Algorithm::SgdGeneral => {
                if self.batch == 0 || self.batch > m {
                    return Err(invalid(format!("batch must lie in [1, m = {m}], got {}", self.batch)));
                }
                T::lit(0.01) * T::lit(self.batch as f64) / T::lit(m as f64)
            }
        };
        if el > limit * slack {
            return Err(invalid(format!("epsilon*lambda = {el} exceeds the step bound {limit} for {algorithm}")));
        }
        Ok(())
    }
}
