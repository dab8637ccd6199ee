//! Dense symmetric-matrix primitives, eigendecomposition, and matrix functions.

mod eig;
mod func;
mod matrix;

pub use eig::{eig, EigDecomp};
pub use func::{kron, matrix_fn, matrix_fn_from, spectral_norm, spectral_norm_bound, tr_cosh};
pub(crate) use func::tr_cosh_of;
pub use matrix::{dot, norm2, Matrix, SymMatrix};
