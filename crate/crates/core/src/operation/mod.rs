//! Degree-truncated Hopf-algebra operations on graded differential algebras.

mod dga;
mod spectral;
mod subspaces;
mod verify;

#[cfg(test)]
mod tests;

pub use dga::GradedDga;
pub use spectral::{spectral_terms, SpectralTable};
pub use subspaces::{
    basics, closure_checks, cohomology, cohomology_of, filtration, filtration_brute_force, filtration_checks,
    horizontals, invariants, CohomologyVariant, Cohomology,
};
pub use verify::{check_superalgebra_relations, verify_axioms};

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;
use thiserror::Error;

use crate::exactla::{Matrix, Scalar};
use crate::hopf::{HopfStructure, Lin};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperationError {
    #[error("degree {degree} is outside the truncation (cutoff {cutoff})")]
    DegreeOutOfRange { degree: usize, cutoff: usize },
    #[error("cutoff {cutoff} is too small: {needed}")]
    InsufficientCutoff { cutoff: usize, needed: String },
}

/// One named check in a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub degree: Option<usize>,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, degree: Option<usize>, witness: Option<String>) -> Self {
        Self { name: name.into(), degree, pass: witness.is_none(), witness }
    }

    pub fn from_bool(name: impl Into<String>, degree: Option<usize>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        Self::new(name, degree, (!ok).then(witness))
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Supplies the operator matrices of an operation, degree by degree.
pub trait OperatorSource<K>: Send + Sync {
    /// `i_h : Omega^n -> Omega^(n-1)` for `1 <= n <= cutoff`.
    fn contraction(&self, h: &K, n: usize) -> Matrix;
    /// `L_h : Omega^n -> Omega^n` for `n <= cutoff`.
    fn lie(&self, h: &K, n: usize) -> Matrix;
}

/// Forwards to an inner source but replaces one contraction by zero.
struct ZeroedContraction<K> {
    inner: Box<dyn OperatorSource<K>>,
    key: K,
}

impl<K: Ord + Send + Sync> OperatorSource<K> for ZeroedContraction<K> {
    fn contraction(&self, h: &K, n: usize) -> Matrix {
        let m = self.inner.contraction(h, n);
        if *h == self.key {
            Matrix::zeros(m.rows(), m.cols())
        } else {
            m
        }
    }

    fn lie(&self, h: &K, n: usize) -> Matrix {
        self.inner.lie(h, n)
    }
}

type OpCache<K> = Mutex<BTreeMap<(bool, K, usize), Arc<Matrix>>>;

/// A graded differential algebra with operators `i_h`, `L_h` for `h` in a Hopf algebra.
///
/// `keys` is the finite set of basis elements over which axioms are checked and
/// subspaces are cut out; operators on other keys are still available on demand.
pub struct HOperation<H: HopfStructure> {
    dga: GradedDga,
    hopf: Arc<H>,
    keys: Vec<H::Key>,
    source: Box<dyn OperatorSource<H::Key>>,
    cache: OpCache<H::Key>,
}

impl<H: HopfStructure> HOperation<H> {
    pub fn new(dga: GradedDga, hopf: Arc<H>, keys: Vec<H::Key>, source: Box<dyn OperatorSource<H::Key>>) -> Self {
        Self { dga, hopf, keys, source, cache: Mutex::new(BTreeMap::new()) }
    }

    /// The same operation with `i_key` replaced by zero on every degree.
    pub fn with_zeroed_contraction(self, key: H::Key) -> Self
    where
        H::Key: 'static,
    {
        let source = Box::new(ZeroedContraction { inner: self.source, key });
        Self::new(self.dga, self.hopf, self.keys, source)
    }

    pub fn dga(&self) -> &GradedDga {
        &self.dga
    }

    pub fn hopf(&self) -> &H {
        &self.hopf
    }

    pub fn keys(&self) -> &[H::Key] {
        &self.keys
    }

    pub fn cutoff(&self) -> usize {
        self.dga.cutoff()
    }

    pub fn check_degree(&self, n: usize) -> Result<(), OperationError> {
        if n > self.cutoff() {
            return Err(OperationError::DegreeOutOfRange { degree: n, cutoff: self.cutoff() });
        }
        Ok(())
    }

    fn cached(&self, lie: bool, h: &H::Key, n: usize) -> Arc<Matrix> {
        let key = (lie, h.clone(), n);
        if let Some(m) = self.cache.lock().unwrap().get(&key) {
            return m.clone();
        }
        let m = if lie {
            self.source.lie(h, n)
        } else if n == 0 {
            Matrix::zeros(0, self.dga.dim(0))
        } else {
            self.source.contraction(h, n)
        };
        let expected = if lie { (self.dga.dim(n), self.dga.dim(n)) } else { (self.dga.dim(n.wrapping_sub(1)), self.dga.dim(n)) };
        assert_eq!((m.rows(), m.cols()), expected, "operator shape for {} in degree {n}", self.hopf.label(h));
        let m = Arc::new(m);
        self.cache.lock().unwrap().entry(key).or_insert(m).clone()
    }

    /// `i_h : Omega^n -> Omega^(n-1)`; zero rows for `n = 0`.
    pub fn i(&self, h: &H::Key, n: usize) -> Arc<Matrix> {
        self.cached(false, h, n)
    }

    pub fn l(&self, h: &H::Key, n: usize) -> Arc<Matrix> {
        self.cached(true, h, n)
    }

    pub fn i_lin(&self, h: &Lin<H::Key>, n: usize) -> Matrix {
        let rows = if n == 0 { 0 } else { self.dga.dim(n - 1) };
        h.iter().fold(Matrix::zeros(rows, self.dga.dim(n)), |acc, (k, c)| acc.add_scaled(c, &self.i(k, n)))
    }

    pub fn l_lin(&self, h: &Lin<H::Key>, n: usize) -> Matrix {
        let d = self.dga.dim(n);
        h.iter().fold(Matrix::zeros(d, d), |acc, (k, c)| acc.add_scaled(c, &self.l(k, n)))
    }

    /// `L_h - eps(h) I` on degree `n`.
    pub fn l_minus_counit(&self, h: &H::Key, n: usize) -> Matrix {
        let eps = self.hopf.counit(h);
        self.l(h, n).sub(&Matrix::scalar(self.dga.dim(n), &eps))
    }

    pub fn label(&self, h: &H::Key) -> String {
        self.hopf.label(h)
    }
}

pub(crate) fn sign(k: usize) -> Scalar {
    if k % 2 == 0 {
        Scalar::one()
    } else {
        Scalar::from(-1)
    }
}
