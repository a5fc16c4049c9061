//! The universal differential calculus `Omega(A)` of an algebra, the operations of a Lie
//! algebra induced by derivations, and their extension to the enveloping algebra.

use thiserror::Error;

mod algebra;
mod omega;
mod operation;
mod quotient;

#[cfg(test)]
mod tests;

pub use algebra::{algebra_fixture, AssocAlgebra, ALGEBRA_FIXTURE_NAMES};
pub use omega::Omega;
pub use operation::{action_fixture, EnvelopeOperation, ObstructionReport, ACTION_FIXTURE_NAMES};
pub use quotient::DerivationCalculus;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopeError {
    #[error("the envelope needs cutoff at least 1, got {0}")]
    CutoffTooSmall(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("product is not associative on {0}")]
    NotAssociative(String),
    #[error("the given unit fails on {0}")]
    NoUnit(String),
    #[error("not a derivation: {0}")]
    NotDerivation(String),
    #[error("bracket of {0} and {1} is not preserved")]
    BracketMismatch(String, String),
    #[error("unknown algebra `{0}`")]
    UnknownFixture(String),
}
