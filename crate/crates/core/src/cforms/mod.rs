//! The graded differential algebra `C(H)` of multilinear forms and its canonical operation.
//!
//! A basis `n`-form `psi_I` with `I = (i_1, .., i_n)` is stored at index
//! `i_1 m^(n-1) + .. + i_n`, so the tensor product of forms is index concatenation.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;
use thiserror::Error;

use crate::exactla::{Matrix, Scalar, SparseVec};
use crate::hopf::HopfAlgebra;
use crate::operation::{Check, GradedDga, HOperation, OperatorSource};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CFormsError {
    #[error("forms of degree {degree} exceed the cutoff {cutoff}")]
    Cutoff { degree: usize, cutoff: usize },
    #[error("forms over different algebras ({0} and {1})")]
    Mismatch(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Differential {
    /// The dual bar differential.
    D0,
    /// `d0 + eps * w + (-1)^(n+1) w * eps`.
    Hochschild,
}

/// An element of `C^n(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultilinearForm {
    pub algebra: String,
    pub degree: usize,
    pub coeffs: SparseVec,
}

/// `C(H)` truncated at `cutoff`, with cached operator data.
pub struct CForms {
    hopf: Arc<HopfAlgebra>,
    cutoff: usize,
    m: usize,
    /// `preimages[i]` lists `(a, b, c)` with `e_a e_b = c e_i + ...`.
    preimages: Vec<Vec<(usize, usize, Scalar)>>,
    /// `ad_rows[k][i] = psi_i o ad(e_k)`.
    ad_rows: Vec<Vec<SparseVec>>,
    tails: Mutex<BTreeMap<(usize, usize), Arc<Vec<SparseVec>>>>,
}

impl CForms {
    pub fn new(hopf: Arc<HopfAlgebra>, cutoff: usize) -> Self {
        let m = hopf.dim();
        let mut preimages = vec![Vec::new(); m];
        for a in 0..m {
            for b in 0..m {
                for (i, c) in hopf.mul_basis(a, b).iter() {
                    preimages[*i].push((a, b, c.clone()));
                }
            }
        }
        let ad_rows = hopf
            .ad_matrices()
            .iter()
            .map(|a| (0..m).map(|i| a.row(i).clone()).collect())
            .collect();
        Self { hopf, cutoff, m, preimages, ad_rows, tails: Mutex::new(BTreeMap::new()) }
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self, n: usize) -> usize {
        self.m.pow(n as u32)
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &i| acc * self.m + i)
    }

    pub fn tuple(&self, n: usize, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = idx % self.m;
            idx /= self.m;
        }
        t
    }

    pub fn label(&self, n: usize, idx: usize) -> String {
        if n == 0 {
            return "1".into();
        }
        let labels = self.hopf.labels();
        let names: Vec<&str> = self.tuple(n, idx).into_iter().map(|i| labels[i].as_str()).collect();
        format!("psi({})", names.join(","))
    }

    /// The dual-basis form `psi_I`.
    pub fn basis_form(&self, tuple: &[usize]) -> MultilinearForm {
        self.form(tuple.len(), SparseVec::unit(self.index(tuple)))
    }

    pub fn form(&self, degree: usize, coeffs: SparseVec) -> MultilinearForm {
        MultilinearForm { algebra: self.hopf.name().to_string(), degree, coeffs }
    }

    /// The counit as a 1-form.
    pub fn counit_form(&self) -> SparseVec {
        SparseVec::from_dense(self.hopf.counit_vec())
    }

    pub fn mul(&self, _p: usize, u: &SparseVec, q: usize, v: &SparseVec) -> SparseVec {
        let shift = self.dim(q);
        let mut terms = Vec::with_capacity(u.nnz() * v.nnz());
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                terms.push((i * shift + j, a * b));
            }
        }
        SparseVec::from_terms(terms)
    }

    fn check(&self, a: &MultilinearForm) -> Result<(), CFormsError> {
        if a.algebra != self.hopf.name() {
            return Err(CFormsError::Mismatch(a.algebra.clone(), self.hopf.name().to_string()));
        }
        Ok(())
    }

    pub fn form_product(&self, a: &MultilinearForm, b: &MultilinearForm) -> Result<MultilinearForm, CFormsError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.form(a.degree + b.degree, self.mul(a.degree, &a.coeffs, b.degree, &b.coeffs)))
    }

    /// Value of a form on a tuple of basis elements.
    pub fn evaluate(&self, a: &MultilinearForm, args: &[usize]) -> Scalar {
        assert_eq!(args.len(), a.degree, "argument count");
        a.coeffs.get(self.index(args))
    }

    /// Value of a form on a tuple of elements of `H`, by multilinearity.
    pub fn evaluate_on(&self, a: &MultilinearForm, args: &[SparseVec]) -> Scalar {
        assert_eq!(args.len(), a.degree, "argument count");
        let mut acc = vec![(0usize, Scalar::one())];
        for v in args {
            let mut next = Vec::new();
            for (i, c) in &acc {
                for (j, x) in v.iter() {
                    next.push((i * self.m + j, c * x));
                }
            }
            acc = next;
        }
        acc.into_iter().fold(Scalar::zero(), |s, (i, c)| s + c * a.coeffs.get(i))
    }

    /// The differential applied to a degree-`n` vector, term by term.
    pub fn apply_d(&self, which: Differential, n: usize, v: &SparseVec) -> SparseVec {
        let m = self.m;
        let mut terms = Vec::new();
        let eps = self.hopf.counit_vec();
        let top = self.dim(n);
        for (idx, c) in v.iter() {
            for k in 0..n {
                // position k from the left, counted 0-based: sign (-1)^(k+1)
                let right = self.dim(n - k - 1);
                let prefix = idx / (right * m);
                let ik = (idx / right) % m;
                let suffix = idx % right;
                for (a, b, x) in &self.preimages[ik] {
                    let j = ((prefix * m + a) * m + b) * right + suffix;
                    let val = c * x;
                    terms.push((j, if k % 2 == 0 { -val } else { val }));
                }
            }
            if which == Differential::Hochschild {
                let odd = n % 2 == 1;
                for (a, e) in eps.iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    let ce = c * e;
                    terms.push((a * top + idx, ce.clone()));
                    // (-1)^(n+1) w eps
                    terms.push((idx * m + a, if odd { ce } else { -ce }));
                }
            }
        }
        SparseVec::from_terms(terms)
    }

    pub fn d_matrix(&self, which: Differential, n: usize) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dim(n)).map(|i| self.apply_d(which, n, &SparseVec::unit(i))).collect();
        Matrix::from_columns(self.dim(n + 1), &cols)
    }

    pub fn d0(&self, a: &MultilinearForm) -> MultilinearForm {
        self.form(a.degree + 1, self.apply_d(Differential::D0, a.degree, &a.coeffs))
    }

    pub fn d_hochschild(&self, a: &MultilinearForm) -> MultilinearForm {
        self.form(a.degree + 1, self.apply_d(Differential::Hochschild, a.degree, &a.coeffs))
    }

    /// First basis form of degree `n` on which `d o d` does not vanish.
    pub fn d_squared_witness(&self, which: Differential, n: usize) -> Option<String> {
        (0..self.dim(n)).find_map(|i| {
            let once = self.apply_d(which, n, &SparseVec::unit(i));
            let twice = self.apply_d(which, n + 1, &once);
            (!twice.is_zero()).then(|| self.label(n, i))
        })
    }

    /// Tensor product of the rows `psi_{j_s} o ad(e_{k_s})`, as a vector of degree `js.len()`.
    fn ad_tensor(&self, ks: &[usize], js: &[usize]) -> Vec<(usize, Scalar)> {
        let mut acc = vec![(0usize, Scalar::one())];
        for (k, j) in ks.iter().zip(js) {
            let row = &self.ad_rows[*k][*j];
            if row.is_zero() {
                return Vec::new();
            }
            let mut next = Vec::with_capacity(acc.len() * row.nnz());
            for (i, c) in &acc {
                for (r, x) in row.iter() {
                    next.push((i * self.m + r, c * x));
                }
            }
            acc = next;
        }
        acc
    }

    /// Columns of `T_{e_k,t} : C^(t+1) -> C^t`,
    /// `T(psi_J)(g_1..g_t) = sum psi_J(h1 - eps(h1) 1, ad(h2) g_1, .., ad(h_(t+1)) g_t)`.
    fn tail(&self, k: usize, t: usize) -> Arc<Vec<SparseVec>> {
        if let Some(c) = self.tails.lock().unwrap().get(&(k, t)) {
            return c.clone();
        }
        let delta = self.hopf.iterated_coproduct(k, t + 1).expect("arity is positive");
        let unit = self.hopf.unit_vec();
        let eps = self.hopf.counit_vec();
        let cols: Vec<SparseVec> = (0..self.dim(t + 1))
            .map(|col| {
                let js = self.tuple(t + 1, col);
                let mut terms = Vec::new();
                for (ks, c) in &delta.terms {
                    let mut f = -(&eps[ks[0]] * &unit.get(js[0]));
                    if ks[0] == js[0] {
                        f += &Scalar::one();
                    }
                    if f.is_zero() {
                        continue;
                    }
                    let cf = c * &f;
                    terms.extend(self.ad_tensor(&ks[1..], &js[1..]).into_iter().map(|(i, x)| (i, &cf * &x)));
                }
                SparseVec::from_terms(terms)
            })
            .collect();
        let cols = Arc::new(cols);
        self.tails.lock().unwrap().entry((k, t)).or_insert(cols).clone()
    }

    /// `i_{e_k} : C^n -> C^(n-1)`.
    pub fn contraction_matrix(&self, k: usize, n: usize) -> Matrix {
        if n == 0 {
            return Matrix::zeros(0, 1);
        }
        let mut cols = Vec::with_capacity(self.dim(n));
        let tails: Vec<Arc<Vec<SparseVec>>> = (0..n).map(|p| self.tail(k, n - p - 1)).collect();
        for idx in 0..self.dim(n) {
            let mut acc = Vec::new();
            for (p, tail) in tails.iter().enumerate() {
                let split = self.dim(n - p);
                let (prefix, suffix) = (idx / split, idx % split);
                let shift = self.dim(n - p - 1);
                let neg = p % 2 == 1;
                for (j, c) in tail[suffix].iter() {
                    acc.push((prefix * shift + j, if neg { -c } else { c.clone() }));
                }
            }
            cols.push(SparseVec::from_terms(acc));
        }
        Matrix::from_columns(self.dim(n - 1), &cols)
    }

    /// `L_{e_k} : C^n -> C^n`, `L_h(Psi)(g_1..g_n) = sum Psi(ad(h1) g_1, .., ad(hn) g_n)`.
    pub fn lie_matrix(&self, k: usize, n: usize) -> Matrix {
        if n == 0 {
            return Matrix::scalar(1, &self.hopf.counit_vec()[k]);
        }
        let delta = self.hopf.iterated_coproduct(k, n).expect("arity is positive");
        let cols: Vec<SparseVec> = (0..self.dim(n))
            .map(|idx| {
                let js = self.tuple(n, idx);
                let mut terms = Vec::new();
                for (ks, c) in &delta.terms {
                    terms.extend(self.ad_tensor(ks, &js).into_iter().map(|(i, x)| (i, c * &x)));
                }
                SparseVec::from_terms(terms)
            })
            .collect();
        Matrix::from_columns(self.dim(n), &cols)
    }

    pub fn contract_i(&self, h: &SparseVec, a: &MultilinearForm) -> MultilinearForm {
        if a.degree == 0 {
            return self.form(0, SparseVec::new());
        }
        let v = h.iter().fold(SparseVec::new(), |acc, (k, c)| {
            acc.add_scaled(c, &self.contraction_matrix(*k, a.degree).apply(&a.coeffs))
        });
        self.form(a.degree - 1, v)
    }

    pub fn lie_l(&self, h: &SparseVec, a: &MultilinearForm) -> MultilinearForm {
        let v = h
            .iter()
            .fold(SparseVec::new(), |acc, (k, c)| acc.add_scaled(c, &self.lie_matrix(*k, a.degree).apply(&a.coeffs)));
        self.form(a.degree, v)
    }

    /// The truncated differential algebra with the chosen differential.
    pub fn dga(&self, which: Differential) -> GradedDga {
        let n = self.cutoff;
        let dims: Vec<usize> = (0..=n).map(|k| self.dim(k)).collect();
        let d = (0..n).map(|k| self.d_matrix(which, k)).collect();
        let labels = (0..=n).map(|k| (0..self.dim(k)).map(|i| self.label(k, i)).collect()).collect();
        let name = match which {
            Differential::D0 => format!("C({}), d0", self.hopf.name()),
            Differential::Hochschild => format!("C({})", self.hopf.name()),
        };
        GradedDga::new(name, dims, d, SparseVec::unit(0), labels, |_, i, q, j| SparseVec::unit(i * self.dim(q) + j))
    }

    /// The canonical operation of `H` on `C(H)`; with `D0` it is an operation on `(C(H), d0)`.
    pub fn operation(self: &Arc<Self>, which: Differential) -> HOperation<HopfAlgebra> {
        let keys = (0..self.m).collect();
        HOperation::new(self.dga(which), self.hopf.clone(), keys, Box::new(CFormsSource(self.clone())))
    }

    /// `i_h d + d i_h = i_h d0 + d0 i_h` on `C^n` for `n < cutoff`.
    pub fn dd0_checks(&self) -> Vec<Check> {
        let both = |which: Differential, k: usize, n: usize| {
            let lhs = self.contraction_matrix(k, n + 1).mul(&self.d_matrix(which, n));
            if n == 0 {
                lhs
            } else {
                lhs.add(&self.d_matrix(which, n - 1).mul(&self.contraction_matrix(k, n)))
            }
        };
        (0..self.cutoff)
            .map(|n| {
                let bad = (0..self.m).find_map(|k| {
                    let (lhs, rhs) = (both(Differential::Hochschild, k, n), both(Differential::D0, k, n));
                    lhs.first_difference(&rhs).map(|(_, c)| format!("h={} on {}", self.hopf.labels()[k], self.label(n, c)))
                });
                Check::new("dd0", Some(n), bad)
            })
            .collect()
    }

    pub fn ensure_degree(&self, degree: usize) -> Result<(), CFormsError> {
        if degree > self.cutoff {
            return Err(CFormsError::Cutoff { degree, cutoff: self.cutoff });
        }
        Ok(())
    }
}

struct CFormsSource(Arc<CForms>);

impl OperatorSource<usize> for CFormsSource {
    fn contraction(&self, h: &usize, n: usize) -> Matrix {
        self.0.contraction_matrix(*h, n)
    }

    fn lie(&self, h: &usize, n: usize) -> Matrix {
        self.0.lie_matrix(*h, n)
    }
}

#[cfg(test)]
mod tests;
