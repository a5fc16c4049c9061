//! Exact computer algebra for Cartan operations of finite-dimensional Hopf algebras.

pub mod cforms;
pub mod classical;
pub mod connection;
pub mod definition;
pub mod envelope;
pub mod exactla;
pub mod hopf;
pub mod operation;
pub mod weil;
