//! Matrix sensing by descent on hyperbolic-cosine potentials.
//!
//! Given unit vectors `u_i` and targets `b_i = u_iᵀA⋆u_i`, the solvers find a
//! symmetric `A` with `|u_iᵀAu_i − b_i| ≤ δ` for every `i` by minimizing
//! `Φ_λ(A) = Σ cosh(λ(u_iᵀAu_i − b_i))`. Everything numeric is generic over
//! [`Scalar`] (`f32` or `f64`); the aliases below fix the common `f64` case.

pub mod error;
pub mod io;
pub mod linalg;
pub mod measurements;
pub mod potential;
pub mod scalar;
pub mod solvers;

pub use error::{Error, OverflowSite, Result};
pub use linalg::{EigDecomp, Matrix, SymMatrix};
pub use measurements::{GroundTruth, MeasurementSet, Regime};
pub use potential::{PotentialParams, SpectralOracle};
pub use scalar::Scalar;
pub use solvers::{Algorithm, ConvergenceTrace, SolveError, Solution, SolverConfig, SolverState, StopRule};

pub type MatrixF64 = Matrix<f64>;
pub type SymMatrixF64 = SymMatrix<f64>;
pub type MeasurementSetF64 = MeasurementSet<f64>;
pub type GroundTruthF64 = GroundTruth<f64>;
pub type SolverConfigF64 = SolverConfig<f64>;
pub type SolutionF64 = Solution<f64>;
pub type SpectralOracleF64 = SpectralOracle<f64>;

pub type MatrixF32 = Matrix<f32>;
pub type SymMatrixF32 = SymMatrix<f32>;
pub type MeasurementSetF32 = MeasurementSet<f32>;
pub type SolverConfigF32 = SolverConfig<f32>;
