//! Connection and curvature forms `A = sum A^k X_k`, `F = dA + 1/2 [A, A]` of a classical operation.

use serde::Serialize;

use crate::exactla::{Matrix, Scalar, SparseVec};
use crate::operation::Check;

use super::ops::ClassicalOperation;
use super::ClassicalError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalForms {
    /// `A^k` in degree 1.
    pub a: Vec<SparseVec>,
    /// `F^k` in degree 2.
    pub f: Vec<SparseVec>,
}

/// `F^k = dA^k + 1/2 sum_(i,j) c^k_ij A^i A^j` for the components `A^k` (rows of `a`).
pub fn classical_connection_element(op: &ClassicalOperation, a: &Matrix) -> Result<ClassicalForms, ClassicalError> {
    op.check_degree(2)?;
    let n = op.lie().dim();
    let dga = op.operation().dga();
    if a.rows() != n || a.cols() != dga.dim(1) {
        return Err(ClassicalError::Shape(format!("connection must be {n} x {}", dga.dim(1))));
    }
    let comps: Vec<SparseVec> = a.row_vecs().to_vec();
    let half = Scalar::ratio(1, 2);
    let f = (0..n)
        .map(|k| {
            let mut v = dga.d(1).apply(&comps[k]);
            for i in 0..n {
                for j in 0..n {
                    let c = op.lie().constant(i, j, k);
                    if !c.is_zero() {
                        v = v.add_scaled(&(&c * &half), &dga.mul(1, &comps[i], 1, &comps[j]));
                    }
                }
            }
            v
        })
        .collect();
    Ok(ClassicalForms { a: comps, f })
}

/// `-sum_j c^k_aj v_j`, the coadjoint transform of a family indexed like `g*`.
fn coadjoint_family(op: &ClassicalOperation, x: usize, family: &[SparseVec], k: usize) -> SparseVec {
    (0..family.len()).fold(SparseVec::new(), |acc, j| acc.add_scaled(&-op.lie().constant(x, j, k), &family[j]))
}

/// The defining properties of a classical connection and its curvature.
pub fn check_classical_connection(op: &ClassicalOperation, a: &Matrix) -> Result<Vec<Check>, ClassicalError> {
    let forms = classical_connection_element(op, a)?;
    let lie = op.lie();
    let n = lie.dim();
    let dga = op.operation().dga();
    let unit = dga.unit();
    let name = |k: usize| lie.labels()[k].as_str();
    let first = |f: &dyn Fn(usize, usize) -> bool| {
        (0..n).flat_map(|x| (0..n).map(move |k| (x, k))).find(|&(x, k)| !f(x, k)).map(|(x, k)| format!("X={}, k={}", name(x), name(k)))
    };
    let mut out = Vec::new();

    let contraction = first(&|x, k| {
        let expected = if x == k { unit.clone() } else { SparseVec::new() };
        op.i(x, 1).apply(&forms.a[k]) == expected
    });
    let equivariance = first(&|x, k| op.l(x, 1).apply(&forms.a[k]) == coadjoint_family(op, x, &forms.a, k));
    out.push(Check::new("AclL_i", Some(1), contraction));
    out.push(Check::new("AclL_L", Some(1), equivariance));

    // agreement with the curvature of the algebraic connection theta^k -> A^k
    let phi = (0..n).find(|&k| {
        let mut v = dga.d(1).apply(&forms.a[k]);
        for i in 0..n {
            for j in i + 1..n {
                v = v.add_scaled(&lie.constant(i, j, k), &dga.mul(1, &forms.a[i], 1, &forms.a[j]));
            }
        }
        v != forms.f[k]
    });
    out.push(Check::new("AFcurv", Some(2), phi.map(|k| format!("k={}", name(k)))));

    out.push(Check::new("InvCF", Some(2), first(&|x, k| op.i(x, 2).apply(&forms.f[k]).is_zero())));
    out.push(Check::new("equiF", Some(2), first(&|x, k| op.l(x, 2).apply(&forms.f[k]) == coadjoint_family(op, x, &forms.f, k))));

    if op.cutoff() >= 3 {
        let bianchi = (0..n).find(|&k| {
            let mut v = dga.d(2).apply(&forms.f[k]);
            for i in 0..n {
                for j in 0..n {
                    v = v.add_scaled(&lie.constant(i, j, k), &dga.mul(1, &forms.a[i], 2, &forms.f[j]));
                }
            }
            !v.is_zero()
        });
        out.push(Check::new("Bianchi", Some(3), bianchi.map(|k| format!("k={}", name(k)))));
    }
    Ok(out)
}
