use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactla::{Matrix, SparseVec, Subspace};
use crate::hopf::HopfStructure;

use super::{Check, HOperation, OperationError};

/// Elements with `L_h(a) = eps(h) a` for every key `h`.
pub fn invariants<H: HopfStructure>(op: &HOperation<H>, n: usize) -> Result<Subspace, OperationError> {
    op.check_degree(n)?;
    let dim = op.dga().dim(n);
    let blocks: Vec<Matrix> = op.keys().iter().map(|h| op.l_minus_counit(h, n)).collect();
    Ok(Subspace::kernel(&Matrix::vstack(dim, &blocks)))
}

/// Elements with `i_h(a) = 0` for every key `h`.
pub fn horizontals<H: HopfStructure>(op: &HOperation<H>, n: usize) -> Result<Subspace, OperationError> {
    op.check_degree(n)?;
    let dim = op.dga().dim(n);
    if n == 0 {
        return Ok(Subspace::full(dim));
    }
    let blocks: Vec<Matrix> = op.keys().iter().map(|h| (*op.i(h, n)).clone()).collect();
    Ok(Subspace::kernel(&Matrix::vstack(dim, &blocks)))
}

pub fn basics<H: HopfStructure>(op: &HOperation<H>, n: usize) -> Result<Subspace, OperationError> {
    Ok(invariants(op, n)?.intersection(&horizontals(op, n)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CohomologyVariant {
    Full,
    Invariant,
    Basic,
}

impl CohomologyVariant {
    pub fn subspace<H: HopfStructure>(self, op: &HOperation<H>, n: usize) -> Result<Subspace, OperationError> {
        match self {
            CohomologyVariant::Full => {
                op.check_degree(n)?;
                Ok(Subspace::full(op.dga().dim(n)))
            }
            CohomologyVariant::Invariant => invariants(op, n),
            CohomologyVariant::Basic => basics(op, n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub degree: usize,
    pub dim: usize,
    /// Cocycles whose classes form a basis.
    pub representatives: Vec<SparseVec>,
}

/// Cohomology at a degree of the subcomplex `V` of a cochain complex, given the incoming
/// differential `d_prev : C^(n-1) -> C^n` (absent in degree 0) and outgoing `d_next`.
pub fn cohomology_of(
    degree: usize,
    d_prev: Option<(&Matrix, &Subspace)>,
    d_next: &Matrix,
    v: &Subspace,
) -> Cohomology {
    let cocycles = v.intersection(&Subspace::kernel(d_next));
    let boundaries = match d_prev {
        Some((d, prev)) => Subspace::image(d, prev),
        None => Subspace::zero(v.ambient()),
    };
    let representatives = cocycles.complement_of(&boundaries);
    Cohomology { degree, dim: representatives.len(), representatives }
}

/// `H^n` of the full, invariant or basic subcomplex; needs `n < cutoff`.
pub fn cohomology<H: HopfStructure>(
    op: &HOperation<H>,
    variant: CohomologyVariant,
    n: usize,
) -> Result<Cohomology, OperationError> {
    if n >= op.cutoff() {
        return Err(OperationError::DegreeOutOfRange { degree: n, cutoff: op.cutoff() });
    }
    let dga = op.dga();
    let v = variant.subspace(op, n)?;
    let prev = if n == 0 { None } else { Some(variant.subspace(op, n - 1)?) };
    Ok(cohomology_of(n, prev.as_ref().map(|p| (dga.d(n - 1), p)), dga.d(n), &v))
}

/// Memoized filtration `F^p(Omega^n)`, computed degree by degree as
/// `F^p(Omega^n) = {w : i_h w in F^p(Omega^(n-1)) for all h}` starting from `F^p(Omega^(p-1)) = 0`.
pub(crate) struct FiltrationCache<'a, H: HopfStructure> {
    op: &'a HOperation<H>,
    spaces: BTreeMap<(usize, usize), Subspace>,
}

impl<'a, H: HopfStructure> FiltrationCache<'a, H> {
    pub(crate) fn new(op: &'a HOperation<H>) -> Self {
        Self { op, spaces: BTreeMap::new() }
    }

    /// `F^p(Omega^n)`, with `F^p = Omega` for `p <= 0`.
    pub(crate) fn get(&mut self, p: i64, n: usize) -> Subspace {
        let dim = self.op.dga().dim(n);
        if p <= 0 {
            return Subspace::full(dim);
        }
        let p = p as usize;
        if n < p {
            return Subspace::zero(dim);
        }
        if let Some(s) = self.spaces.get(&(p, n)) {
            return s.clone();
        }
        let target = if n == p { Subspace::zero(self.op.dga().dim(n - 1)) } else { self.get(p as i64, n - 1) };
        let ann = target.annihilator();
        let blocks: Vec<Matrix> = self.op.keys().iter().map(|h| ann.mul(&self.op.i(h, n))).collect();
        let s = Subspace::kernel(&Matrix::vstack(dim, &blocks));
        self.spaces.insert((p, n), s.clone());
        s
    }
}

pub fn filtration<H: HopfStructure>(op: &HOperation<H>, p: usize, n: usize) -> Result<Subspace, OperationError> {
    op.check_degree(n)?;
    op.check_degree(p)?;
    Ok(FiltrationCache::new(op).get(p as i64, n))
}

/// `F^p(Omega^n)` as the common kernel of every composite `i_{h_1} ... i_{h_(n-p+1)}`.
pub fn filtration_brute_force<H: HopfStructure>(
    op: &HOperation<H>,
    p: usize,
    n: usize,
) -> Result<Subspace, OperationError> {
    op.check_degree(n)?;
    op.check_degree(p)?;
    let dim = op.dga().dim(n);
    if n < p {
        return Ok(Subspace::zero(dim));
    }
    if p == 0 {
        return Ok(Subspace::full(dim));
    }
    // composites ending in degree n - k, built by prepending contractions
    let mut layer = vec![Matrix::identity(dim)];
    for k in 0..=(n - p) {
        let next: Vec<Matrix> =
            layer.iter().flat_map(|m| op.keys().iter().map(move |h| op.i(h, n - k).mul(m))).collect();
        layer = next;
    }
    Ok(Subspace::kernel(&Matrix::vstack(dim, &layer)))
}

fn contained(image_of: impl Iterator<Item = SparseVec>, target: &Subspace) -> Option<usize> {
    image_of.enumerate().find(|(_, v)| !target.contains(v)).map(|(k, _)| k)
}

/// Closure properties of the invariant, horizontal and basic subspaces.
pub fn closure_checks<H: HopfStructure>(op: &HOperation<H>) -> Result<Vec<Check>, OperationError> {
    let dga = op.dga();
    let n = op.cutoff();
    let inv: Vec<Subspace> = (0..=n).map(|k| invariants(op, k)).collect::<Result<_, _>>()?;
    let hor: Vec<Subspace> = (0..=n).map(|k| horizontals(op, k)).collect::<Result<_, _>>()?;
    let bas: Vec<Subspace> = inv.iter().zip(&hor).map(|(a, b)| a.intersection(b)).collect();
    let mut out = Vec::new();
    for (name, spaces) in [("invariant", &inv), ("basic", &bas)] {
        for k in 0..n {
            let bad = contained(spaces[k].basis().iter().map(|v| dga.d(k).apply(v)), &spaces[k + 1]);
            out.push(Check::new(format!("{name}_d_closed"), Some(k), bad.map(|b| format!("basis vector {b}"))));
        }
    }
    for (name, spaces) in [("invariant", &inv), ("horizontal", &hor), ("basic", &bas)] {
        for t in 0..=n {
            let mut bad = None;
            'pairs: for a in 0..=t {
                let b = t - a;
                for (i, u) in spaces[a].basis().iter().enumerate() {
                    for (j, v) in spaces[b].basis().iter().enumerate() {
                        if !spaces[t].contains(&dga.mul(a, u, b, v)) {
                            bad = Some(format!("product of basis vectors {i} (degree {a}) and {j} (degree {b})"));
                            break 'pairs;
                        }
                    }
                }
            }
            out.push(Check::new(format!("{name}_product_closed"), Some(t), bad));
        }
    }
    for k in 0..=n {
        let bad = op.keys().iter().find_map(|h| {
            let l = op.l(h, k);
            contained(hor[k].basis().iter().map(|v| l.apply(v)), &hor[k])
                .map(|b| format!("L_{} on basis vector {b}", op.label(h)))
        });
        out.push(Check::new("horizontal_lie_closed", Some(k), bad));
    }
    Ok(out)
}

/// Nesting, multiplicativity and stability of the filtration under `i_h`, `d`, `L_h`.
pub fn filtration_checks<H: HopfStructure>(op: &HOperation<H>) -> Vec<Check> {
    let dga = op.dga();
    let n = op.cutoff();
    let mut cache = FiltrationCache::new(op);
    let mut out = Vec::new();
    for p in 0..=n + 1 {
        let mut nested = None;
        let mut sti = None;
        let mut std = None;
        let mut stl = None;
        for k in 0..=n {
            let f = cache.get(p as i64, k);
            if nested.is_none() && !cache.get(p as i64 - 1, k).contains_space(&f) {
                nested = Some(format!("degree {k}"));
            }
            if k > 0 && sti.is_none() {
                let below = cache.get(p as i64, k - 1);
                sti = op.keys().iter().find_map(|h| {
                    let i = op.i(h, k);
                    contained(f.basis().iter().map(|v| i.apply(v)), &below)
                        .map(|b| format!("i_{} in degree {k}, basis vector {b}", op.label(h)))
                });
            }
            if k < n && std.is_none() {
                let above = cache.get(p as i64, k + 1);
                std = contained(f.basis().iter().map(|v| dga.d(k).apply(v)), &above)
                    .map(|b| format!("degree {k}, basis vector {b}"));
            }
            if stl.is_none() {
                stl = op.keys().iter().find_map(|h| {
                    let l = op.l(h, k);
                    contained(f.basis().iter().map(|v| l.apply(v)), &f)
                        .map(|b| format!("L_{} in degree {k}, basis vector {b}", op.label(h)))
                });
            }
        }
        out.push(Check::new("filtration_nested", Some(p), nested));
        out.push(Check::new("sti", Some(p), sti));
        out.push(Check::new("std", Some(p), std));
        out.push(Check::new("stL", Some(p), stl));
    }
    for p in 0..=n {
        let mut bad = None;
        'coher: for q in 0..=n - p {
            for a in 0..=n {
                for b in 0..=n - a {
                    let fa = cache.get(p as i64, a);
                    let fb = cache.get(q as i64, b);
                    if fa.dim() == 0 || fb.dim() == 0 {
                        continue;
                    }
                    let target = cache.get((p + q) as i64, a + b);
                    for u in fa.basis() {
                        for v in fb.basis() {
                            if !target.contains(&dga.mul(a, u, b, v)) {
                                bad = Some(format!("F^{p} in degree {a} times F^{q} in degree {b}"));
                                break 'coher;
                            }
                        }
                    }
                }
            }
        }
        out.push(Check::new("coher", Some(p), bad));
    }
    out
}
