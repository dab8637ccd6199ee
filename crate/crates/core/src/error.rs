use std::io;

use thiserror::Error;

/// Where an exponential overflowed.
#[derive(Debug, Clone, PartialEq)]
pub enum OverflowSite {
    /// A matrix function was evaluated at an eigenvalue outside its finite range.
    Eigenvalue(f64),
    /// `λ·z_i` for measurement `index` pushed `cosh`/`sinh` past the exp-safe range.
    Residual { index: usize, residual: f64 },
    /// An aggregate (sum or norm) overflowed although each term was finite.
    Aggregate(&'static str),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("overflow at {0:?}; lower lambda or rescale the instance")]
    Overflow(OverflowSite),

    #[error("generation failed at vector {index} after {attempts} consecutive rejections")]
    GenerationFailed { index: usize, attempts: usize },

    #[error("gradient vanishes: all residuals are zero")]
    AlreadyStationary,

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
