//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real floating-point scalar the solvers are generic over (`f32` or `f64`).
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an `f64` literal. Every finite `f64` maps to some value of an
    /// IEEE type, so this never fails for the implemented scalars.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Largest `x` with `exp(x)` finite (about 709.78 for `f64`).
    #[inline]
    fn exp_limit() -> Self {
        Self::max_value().ln()
    }

    /// Above this value of `λ·max|z|` the potentials are evaluated with an
    /// exponential shift factored out. Half the exp limit keeps squared
    /// hyperbolic terms finite; capped at 300 for `f64`.
    #[inline]
    fn log_domain_threshold() -> Self {
        Self::lit(300.0).min(Self::exp_limit() / Self::lit(2.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
