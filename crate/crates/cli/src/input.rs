use std::sync::Arc;

use thiserror::Error;

use hopfweil_core::cforms::CFormsError;
use hopfweil_core::classical::{lie_catalog, ClassicalError, LieAlgebra};
use hopfweil_core::connection::ConnectionError;
use hopfweil_core::definition::{Definition, DefinitionError};
use hopfweil_core::envelope::EnvelopeError;
use hopfweil_core::hopf::{catalog, HopfAlgebra, HopfError, HopfParts};
use hopfweil_core::operation::OperationError;
use hopfweil_core::weil::WeilError;

use crate::{HopfInput, LieInput};

pub const MAX_DIM_VAR: &str = "HOPFWEIL_MAX_DIM";
const DEFAULT_MAX_DIM: usize = 5000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{what} has dimension {dim} in degree {degree}, above the cap {cap} (raise {MAX_DIM_VAR} to allow it)")]
    TooLarge { what: String, degree: usize, dim: usize, cap: usize },
    #[error(transparent)]
    Definition(#[from] DefinitionError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    CForms(#[from] CFormsError),
    #[error(transparent)]
    Operation(#[from] OperationError),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
}

/// The per-degree dimension cap, from the environment or the default.
pub fn max_dim() -> Result<usize, CliError> {
    match std::env::var(MAX_DIM_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Input(format!("{MAX_DIM_VAR} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

/// Rejects a complex whose predicted dimension exceeds the cap in some degree.
pub fn guard(what: &str, dims: &[usize]) -> Result<(), CliError> {
    let cap = max_dim()?;
    match dims.iter().enumerate().find(|(_, &d)| d > cap) {
        Some((degree, &dim)) => Err(CliError::TooLarge { what: what.into(), degree, dim, cap }),
        None => Ok(()),
    }
}

/// `m^n` for `n <= cutoff`, saturating.
pub fn power_dims(m: usize, cutoff: usize) -> Vec<usize> {
    (0..=cutoff).map(|n| m.saturating_pow(n as u32)).collect()
}

pub fn input_bytes(path: Option<&str>) -> Vec<u8> {
    path.and_then(|p| std::fs::read(p).ok()).unwrap_or_default()
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.into(), message: e.to_string() })
}

fn definition(path: &str) -> Result<Definition, CliError> {
    Ok(Definition::parse(&read(path)?)?)
}

/// Raw structure constants, so that invalid files can still be reported on.
pub fn hopf_parts(input: &HopfInput) -> Result<HopfParts, CliError> {
    match (&input.catalog, &input.file) {
        (_, Some(path)) => Ok(definition(path)?.to_hopf_parts()?),
        (Some(name), None) => Ok(catalog(name)?.parts().clone()),
        (None, None) => Err(CliError::Input("give --catalog NAME or --file PATH".into())),
    }
}

pub fn hopf(input: &HopfInput) -> Result<Arc<HopfAlgebra>, CliError> {
    match (&input.catalog, &input.file) {
        (_, Some(path)) => Ok(Arc::new(definition(path)?.to_hopf()?)),
        (Some(name), None) => Ok(Arc::new(catalog(name)?)),
        (None, None) => Err(CliError::Input("give --catalog NAME or --file PATH".into())),
    }
}

/// The Lie algebra, `sl2` when neither flag is given.
pub fn lie(input: &LieInput) -> Result<Arc<LieAlgebra>, CliError> {
    match (&input.lie, &input.lie_file) {
        (_, Some(path)) => Ok(Arc::new(definition(path)?.to_lie()?)),
        (name, None) => Ok(Arc::new(lie_catalog(name.as_deref().unwrap_or("sl2"))?)),
    }
}
