use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactla::Subspace;
use crate::hopf::HopfStructure;

use super::subspaces::FiltrationCache;
use super::{HOperation, OperationError};

/// Dimensions of `E_r^{p,q}` for every bidegree with `p + q < cutoff`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralTable {
    pub r: usize,
    pub cutoff: usize,
    pub dims: BTreeMap<(usize, usize), usize>,
}

impl SpectralTable {
    pub fn get(&self, p: usize, q: usize) -> Option<usize> {
        self.dims.get(&(p, q)).copied()
    }
}

/// `Z_r^p` in total degree `n`: elements of `F^p` whose differential lies in `F^(p+r)`.
fn cycles<H: HopfStructure>(cache: &mut FiltrationCache<'_, H>, op: &HOperation<H>, r: i64, p: i64, n: usize) -> Subspace {
    let f = cache.get(p, n);
    if r < 0 {
        return f;
    }
    let target = cache.get(p + r, n + 1);
    f.intersection(&Subspace::preimage(op.dga().d(n), &target))
}

/// `E_r = Z_r^p / (Z_(r-1)^(p+1) + d Z_(r-1)^(p-r+1))` for `r <= 2`.
pub fn spectral_terms<H: HopfStructure>(op: &HOperation<H>, r: usize) -> Result<SpectralTable, OperationError> {
    if r > 2 {
        return Err(OperationError::InsufficientCutoff {
            cutoff: op.cutoff(),
            needed: format!("only pages r <= 2 are available, got {r}"),
        });
    }
    if op.cutoff() == 0 {
        return Err(OperationError::InsufficientCutoff {
            cutoff: 0,
            needed: "spectral terms need a differential".into(),
        });
    }
    let ri = r as i64;
    let mut cache = FiltrationCache::new(op);
    let mut dims = BTreeMap::new();
    for n in 0..op.cutoff() {
        for p in 0..=n {
            let pi = p as i64;
            let z = cycles(&mut cache, op, ri, pi, n);
            let lower = cycles(&mut cache, op, ri - 1, pi + 1, n);
            let boundaries = if n == 0 {
                Subspace::zero(z.ambient())
            } else {
                let src = cycles(&mut cache, op, ri - 1, pi - ri + 1, n - 1);
                Subspace::image(op.dga().d(n - 1), &src)
            };
            let denom = lower.sum(&boundaries);
            dims.insert((p, n - p), z.dim() - z.intersection(&denom).dim());
        }
    }
    Ok(SpectralTable { r, cutoff: op.cutoff(), dims })
}
