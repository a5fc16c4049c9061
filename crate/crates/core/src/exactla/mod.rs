//! Exact linear algebra over the coefficient field.

mod elim;
mod matrix;
mod scalar;
mod sparse;
mod subspace;

pub use elim::{kernel_basis, rank, rref, solve_affine, Rref};
pub use matrix::Matrix;
pub use scalar::{CyclotomicField, Field, Scalar};
pub use sparse::SparseVec;
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
