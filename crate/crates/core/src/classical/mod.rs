//! Operations of a Lie algebra `g` on `Lambda g*` and on `W(g)`, viewed as operations
//! of the enveloping algebra `U(g)`.

use thiserror::Error;

mod curvature;
mod extension;
mod gc;
mod invariants;
mod lie;
mod ops;
mod uenv;


pub use curvature::{check_classical_connection, classical_connection_element, ClassicalForms};
pub use extension::{
    bar_i, check_all_shuffles, check_lext_u, check_propbari, check_shuffle_identity, to_symmetric, u_ext_l, BarConvention,
};
pub use gc::{multisets, subsets, GcAlgebra, Monomial};
pub use invariants::{cartan_map, invariant_polynomials, CartanImage, InvariantPolynomials};
pub use lie::{lie_catalog, LieAlgebra, LIE_CATALOG_NAMES};
pub use ops::{lie_operation_checks, ClassicalKind, ClassicalOperation};
pub use uenv::{PbwWord, UEnvelope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error("malformed bracket table: {0}")]
    Shape(String),
    #[error("bracket is not antisymmetric on ({0}, {1})")]
    Antisymmetry(String, String),
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("unknown Lie algebra `{0}`")]
    UnknownCatalog(String),
    #[error("degree {degree} exceeds the cutoff {cutoff}")]
    Cutoff { degree: usize, cutoff: usize },
    #[error("the Cartan map needs the Weil algebra")]
    NotWeil,
    #[error("polynomial is not invariant: {0}")]
    NotInvariant(String),
    #[error("no transgression exists within the cutoff")]
    NoTransgression,
    #[error("{0}")]
    Operation(String),
    #[error("word {0:?} is not a PBW word")]
    Unsorted(Vec<usize>),
}
