//! Algebraic connections `alpha : C(H) -> Omega` on operations of a finite-dimensional Hopf algebra.
//!
//! Since `C(H) = T(H*)`, a connection is fixed by its degree-1 part, stored as an
//! `m x dim(Omega^1)` matrix whose row `j` is `alpha(psi_j)`.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cforms::{CForms, Differential, MultilinearForm};
use crate::exactla::{solve_affine, Matrix, Scalar, SparseVec, Subspace};
use crate::hopf::HopfAlgebra;
use crate::operation::{sign, Check, GradedDga, HOperation};
use crate::weil::WeilAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("degree {degree} exceeds the cutoff {cutoff}")]
    Cutoff { degree: usize, cutoff: usize },
    #[error("operation has cutoff {0}; connections need degree 1")]
    NoDegreeOne(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// The degree-1 data of a (candidate) connection together with its source `C(H)`.
#[derive(Clone)]
pub struct Connection {
    cforms: Arc<CForms>,
    alpha: Matrix,
}

impl std::fmt::Debug for Connection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Connection").field("algebra", &self.cforms.hopf().name()).field("alpha", &self.alpha).finish()
    }
}

/// One particular connection and a basis of the homogeneous solutions.
#[derive(Clone, Debug)]
pub struct ConnectionSpace {
    pub particular: Connection,
    pub kernel: Vec<Matrix>,
}

impl ConnectionSpace {
    pub fn affine_dim(&self) -> usize {
        self.kernel.len()
    }

    /// Whether `alpha` is the particular solution plus a combination of kernel elements.
    pub fn contains(&self, alpha: &Matrix) -> bool {
        let diff = flatten(&alpha.sub(&self.particular.alpha));
        let span: Vec<SparseVec> = self.kernel.iter().map(flatten).collect();
        Subspace::span(self.particular.alpha.rows() * self.particular.alpha.cols(), &span).contains(&diff)
    }
}

fn flatten(m: &Matrix) -> SparseVec {
    let cols = m.cols();
    SparseVec::from_terms(m.row_vecs().iter().enumerate().flat_map(|(j, row)| row.iter().map(move |(k, c)| (j * cols + k, c.clone()))))
}

fn unflatten(rows: usize, cols: usize, v: &SparseVec) -> Matrix {
    let mut data = vec![Vec::new(); rows];
    for (idx, c) in v.iter() {
        data[idx / cols].push((idx % cols, c.clone()));
    }
    Matrix::from_rows(cols, data.into_iter().map(SparseVec::from_terms).collect())
}

/// Element of `H (x) Omega^n`: `components[j]` is the `Omega^n` coefficient of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HTensor {
    pub degree: usize,
    pub components: Vec<SparseVec>,
}

impl HTensor {
    pub fn zero(m: usize, degree: usize) -> Self {
        Self { degree, components: vec![SparseVec::new(); m] }
    }

    /// `sum_j e_j (x) map(psi_j)`, the image of `map` under `Hom(H*, Omega^n) = H (x) Omega^n`.
    pub fn from_map(degree: usize, map: &Matrix) -> Self {
        Self { degree, components: map.row_vecs().to_vec() }
    }

    pub fn to_map(&self, cols: usize) -> Matrix {
        Matrix::from_rows(cols, self.components.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(SparseVec::is_zero)
    }

    pub fn add(&self, other: &HTensor) -> HTensor {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &HTensor) -> HTensor {
        self.add_scaled(&Scalar::from(-1), other)
    }

    pub fn add_scaled(&self, c: &Scalar, other: &HTensor) -> HTensor {
        assert_eq!(self.degree, other.degree, "degree mismatch in H (x) Omega");
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.add_scaled(c, b)).collect();
        HTensor { degree: self.degree, components }
    }

    /// Product in `H (x) Omega`; `H` sits in degree zero so no sign appears.
    pub fn mul(&self, hopf: &HopfAlgebra, omega: &GradedDga, other: &HTensor) -> HTensor {
        let mut out = HTensor::zero(hopf.dim(), self.degree + other.degree);
        for (a, u) in self.components.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (b, v) in other.components.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let uv = omega.mul(self.degree, u, other.degree, v);
                if uv.is_zero() {
                    continue;
                }
                for (k, c) in hopf.mul_basis(a, b).iter() {
                    out.components[*k] = out.components[*k].add_scaled(c, &uv);
                }
            }
        }
        out
    }

    pub fn d(&self, omega: &GradedDga) -> HTensor {
        let d = omega.d(self.degree);
        HTensor { degree: self.degree + 1, components: self.components.iter().map(|u| d.apply(u)).collect() }
    }

    /// `1_H (x) omega`.
    pub fn scalar_part(hopf: &HopfAlgebra, degree: usize, omega: &SparseVec) -> HTensor {
        let components = (0..hopf.dim()).map(|k| omega.scaled(&hopf.unit_vec().get(k))).collect();
        HTensor { degree, components }
    }
}

impl Connection {
    pub fn new(cforms: Arc<CForms>, alpha: Matrix) -> Result<Self, ConnectionError> {
        let m = cforms.hopf().dim();
        if alpha.rows() != m {
            return Err(ConnectionError::Shape(format!("expected {m} rows, got {}", alpha.rows())));
        }
        Ok(Self { cforms, alpha })
    }

    /// The identity of `C(H)`, the canonical flat connection.
    pub fn canonical_flat(cforms: Arc<CForms>) -> Self {
        let m = cforms.hopf().dim();
        Self { cforms, alpha: Matrix::identity(m) }
    }

    /// `alpha_W(psi) = a_psi` on the Weil algebra.
    pub fn weil(w: &WeilAlgebra) -> Self {
        Self { cforms: w.cforms().clone(), alpha: w.alpha_matrix(1).transpose() }
    }

    pub fn cforms(&self) -> &Arc<CForms> {
        &self.cforms
    }

    pub fn matrix(&self) -> &Matrix {
        &self.alpha
    }

    /// The same connection plus `delta`, as a map `H* -> Omega^1`.
    pub fn perturbed(&self, delta: &Matrix) -> Self {
        Self { cforms: self.cforms.clone(), alpha: self.alpha.add(delta) }
    }

    /// `alpha` on `C^n` as a `dim(Omega^n) x m^n` matrix, by multiplicativity.
    pub fn extension_matrix(&self, op: &HOperation<HopfAlgebra>, n: usize) -> Result<Matrix, ConnectionError> {
        check(op, &self.cforms, n)?;
        let dga = op.dga();
        let m = self.cforms.hopf().dim();
        let mut cols = vec![dga.unit().clone()];
        for k in 1..=n {
            let mut next = Vec::with_capacity(cols.len() * m);
            for prev in &cols {
                for j in 0..m {
                    next.push(dga.mul(k - 1, prev, 1, self.alpha.row(j)));
                }
            }
            cols = next;
        }
        Ok(Matrix::from_columns(dga.dim(n), &cols))
    }

    pub fn extend(&self, op: &HOperation<HopfAlgebra>, psi: &MultilinearForm) -> Result<SparseVec, ConnectionError> {
        Ok(self.extension_matrix(op, psi.degree)?.apply(&psi.coeffs))
    }

    /// `phi = d alpha - alpha d` on `C^n`, a `dim(Omega^(n+1)) x m^n` matrix.
    pub fn curvature_matrix(&self, op: &HOperation<HopfAlgebra>, n: usize) -> Result<Matrix, ConnectionError> {
        check(op, &self.cforms, n + 1)?;
        let lhs = op.dga().d(n).mul(&self.extension_matrix(op, n)?);
        let rhs = self.extension_matrix(op, n + 1)?.mul(&self.cforms.d_matrix(Differential::Hochschild, n));
        Ok(lhs.sub(&rhs))
    }

    pub fn curvature(&self, op: &HOperation<HopfAlgebra>, psi: &MultilinearForm) -> Result<SparseVec, ConnectionError> {
        Ok(self.curvature_matrix(op, psi.degree)?.apply(&psi.coeffs))
    }

    /// `A = sum_j e_j (x) alpha(psi_j)`.
    pub fn element(&self) -> HTensor {
        HTensor::from_map(1, &self.alpha)
    }

    /// `1_H (x) alpha(eps)`, the counit term paired with `A`.
    pub fn counit_element(&self) -> HTensor {
        let eps = self.cforms.counit_form();
        let alpha_eps = self.alpha.transpose().apply(&eps);
        HTensor::scalar_part(self.cforms.hopf(), 1, &alpha_eps)
    }

    /// `F = dA + A^2 - (eps A + A eps)`, which corresponds to `phi` on `H*`.
    pub fn curvature_element(&self, op: &HOperation<HopfAlgebra>) -> Result<HTensor, ConnectionError> {
        check(op, &self.cforms, 2)?;
        let (h, dga) = (self.cforms.hopf(), op.dga());
        let a = self.element();
        let e = self.counit_element();
        Ok(a.d(dga).add(&a.mul(h, dga, &a)).sub(&e.mul(h, dga, &a)).sub(&a.mul(h, dga, &e)))
    }

    /// `d(A - eps) + (A - eps)^2`.
    pub fn shifted_curvature_element(&self, op: &HOperation<HopfAlgebra>) -> Result<HTensor, ConnectionError> {
        check(op, &self.cforms, 2)?;
        let (h, dga) = (self.cforms.hopf(), op.dga());
        let b = self.element().sub(&self.counit_element());
        Ok(b.d(dga).add(&b.mul(h, dga, &b)))
    }

    /// `dF + (A - eps) F - F (A - eps)` for a given `F`.
    pub fn bianchi_defect(&self, op: &HOperation<HopfAlgebra>, f: &HTensor) -> Result<HTensor, ConnectionError> {
        check(op, &self.cforms, 3)?;
        let (h, dga) = (self.cforms.hopf(), op.dga());
        let b = self.element().sub(&self.counit_element());
        Ok(f.d(dga).add(&b.mul(h, dga, f)).sub(&f.mul(h, dga, &b)))
    }
}

fn check(op: &HOperation<HopfAlgebra>, cforms: &CForms, n: usize) -> Result<(), ConnectionError> {
    let cutoff = op.cutoff().min(cforms.cutoff());
    if n > cutoff {
        return Err(ConnectionError::Cutoff { degree: n, cutoff });
    }
    Ok(())
}

/// Solves the degree-1 constraints
/// `i_h alpha(psi) = psi(h) - eps(h) psi(1)` and `L_h alpha(psi) = alpha(psi o ad h)`.
pub fn solve_connection_space(
    op: &HOperation<HopfAlgebra>,
    cforms: Arc<CForms>,
) -> Result<Option<ConnectionSpace>, ConnectionError> {
    if op.cutoff() < 1 {
        return Err(ConnectionError::NoDegreeOne(op.cutoff()));
    }
    let h = cforms.hopf().clone();
    let m = h.dim();
    let dga = op.dga();
    let (d0, d1) = (dga.dim(0), dga.dim(1));
    let var = |j: usize, k: usize| j * d1 + k;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for hk in op.keys() {
        let i = op.i(hk, 1);
        let l = op.l(hk, 1);
        let ad = &h.ad_matrices()[*hk];
        let eps = &h.counit_vec()[*hk];
        for j in 0..m {
            let target = Scalar::from(i64::from(j == *hk)) - eps * &h.unit_vec().get(j);
            for r in 0..d0 {
                rows.push(SparseVec::from_terms(i.row(r).iter().map(|(k, c)| (var(j, *k), c.clone()))));
                rhs.push(&target * &dga.unit().get(r));
            }
            for r in 0..d1 {
                let mut row = SparseVec::from_terms(l.row(r).iter().map(|(k, c)| (var(j, *k), c.clone())));
                for (p, c) in ad.row(j).iter() {
                    row = row.add_scaled(&-c.clone(), &SparseVec::unit(var(*p, r)));
                }
                rows.push(row);
                rhs.push(Scalar::zero());
            }
        }
    }
    let a = Matrix::from_rows(m * d1, rows);
    let b = SparseVec::from_dense(&rhs);
    Ok(solve_affine(&a, &b).map(|(x, kernel)| ConnectionSpace {
        particular: Connection { cforms, alpha: unflatten(m, d1, &x) },
        kernel: kernel.iter().map(|v| unflatten(m, d1, v)).collect(),
    }))
}

fn first_mismatch(lhs: &Matrix, rhs: &Matrix, describe: impl Fn(usize) -> String) -> Option<String> {
    lhs.first_difference(rhs).map(|(r, c)| format!("{} (component {r})", describe(c)))
}

/// Checks the connection and curvature identities on the low-degree data.
///
/// Contraction and Lie identities run on `C^n` with `n <= 2`, curvature identities on
/// every degree the truncation allows.
pub fn verify_connection(conn: &Connection, op: &HOperation<HopfAlgebra>) -> Vec<Check> {
    let c = conn.cforms();
    let cutoff = op.cutoff().min(c.cutoff());
    let exts: Vec<Matrix> = (0..=cutoff).map(|n| conn.extension_matrix(op, n).expect("degree checked")).collect();
    let phis: Vec<Matrix> = (0..cutoff).map(|n| conn.curvature_matrix(op, n).expect("degree checked")).collect();
    let ext = |n: usize| &exts[n];
    let phi = |n: usize| &phis[n];
    let psi = |n: usize, idx: usize| c.label(n, idx);
    let key = |k: &usize| op.label(k);
    let mut out = Vec::new();

    for n in 1..=cutoff.min(2) {
        let mut wi = None;
        let mut wl = None;
        for k in op.keys() {
            let lhs = op.i(k, n).mul(ext(n));
            let rhs = ext(n - 1).mul(&c.contraction_matrix(*k, n));
            wi = wi.or_else(|| first_mismatch(&lhs, &rhs, |col| format!("h={}, {}", key(k), psi(n, col))));
            let lhs = op.l(k, n).mul(ext(n));
            let rhs = ext(n).mul(&c.lie_matrix(*k, n));
            wl = wl.or_else(|| first_mismatch(&lhs, &rhs, |col| format!("h={}, {}", key(k), psi(n, col))));
        }
        out.push(Check::new("GCo2_i", Some(n), wi));
        out.push(Check::new("GCo2_L", Some(n), wl));
    }

    if cutoff >= 1 {
        let p0 = phi(0);
        out.push(Check::from_bool("normF", Some(0), p0.is_zero(), || "phi(1) is nonzero".into()));
    }
    for n in 1..cutoff.min(3) {
        let p = phi(n);
        let mut wi = None;
        let mut wl = None;
        for k in op.keys() {
            let lhs = op.i(k, n + 1).mul(p);
            let rhs = phi(n - 1).mul(&c.contraction_matrix(*k, n)).scaled(&Scalar::from(-1));
            wi = wi.or_else(|| first_mismatch(&lhs, &rhs, |col| format!("h={}, {}", key(k), psi(n, col))));
            let lhs = op.l(k, n + 1).mul(p);
            let rhs = p.mul(&c.lie_matrix(*k, n));
            wl = wl.or_else(|| first_mismatch(&lhs, &rhs, |col| format!("h={}, {}", key(k), psi(n, col))));
        }
        if n == 1 {
            out.push(Check::new("dequiF", Some(1), wi.clone().or(wl.clone())));
        }
        out.push(Check::new("GF2_i", Some(n), wi));
        out.push(Check::new("GF2_L", Some(n), wl));
    }

    // phi(Phi Psi) = phi(Phi) alpha(Psi) + (-1)^f alpha(Phi) phi(Psi)
    for total in 1..cutoff.min(3) {
        let dga = op.dga();
        let whole = phi(total).columns();
        let mut witness = None;
        for f in 0..=total {
            let g = total - f;
            let (pf, pg, af, ag) = (phi(f).columns(), phi(g).columns(), ext(f).columns(), ext(g).columns());
            'pairs: for x in 0..c.dim(f) {
                for y in 0..c.dim(g) {
                    let lhs = &whole[x * c.dim(g) + y];
                    let rhs = dga
                        .mul(f + 1, &pf[x], g, &ag[y])
                        .add_scaled(&sign(f), &dga.mul(f, &af[x], g + 1, &pg[y]));
                    if *lhs != rhs {
                        witness = Some(format!("Phi={}, Psi={}", psi(f, x), psi(g, y)));
                        break 'pairs;
                    }
                }
            }
            if witness.is_some() {
                break;
            }
        }
        out.push(Check::new("Fder", Some(total), witness));
    }

    for n in 0..cutoff.saturating_sub(1).min(3) {
        let lhs = op.dga().d(n + 1).mul(phi(n));
        let rhs = phi(n + 1).mul(&c.d_matrix(Differential::Hochschild, n)).scaled(&Scalar::from(-1));
        out.push(Check::new("Bianchi", Some(n), first_mismatch(&lhs, &rhs, |col| psi(n, col))));
    }
    out
}

#[cfg(test)]
mod tests;
