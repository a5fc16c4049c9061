//! The Weil algebra `W(H)`: the free graded algebra on letters `a_j` (degree 1) and
//! `f_j` (degree 2), one pair per dual basis form `psi_j`, truncated at a cutoff.
//!
//! Words of each degree are listed lexicographically with `a < f` and then by index, so
//! the basis index of a word is computed from its first letter and the index of the rest.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cforms::{CForms, Differential};
use crate::exactla::{Matrix, Scalar, SparseVec};
use crate::hopf::HopfAlgebra;
use crate::operation::{Check, GradedDga, HOperation, OperatorSource};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error("degree {degree} exceeds the cutoff {cutoff}")]
    Cutoff { degree: usize, cutoff: usize },
    #[error("word dimension counts disagree in degree {degree}: free words {free}, bimodule model {bimodule}")]
    DimensionMismatch { degree: usize, free: usize, bimodule: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LetterKind {
    A,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter {
    pub kind: LetterKind,
    pub index: usize,
}

impl Letter {
    pub fn a(index: usize) -> Self {
        Letter { kind: LetterKind::A, index }
    }

    pub fn f(index: usize) -> Self {
        Letter { kind: LetterKind::F, index }
    }

    pub fn degree(self) -> usize {
        match self.kind {
            LetterKind::A => 1,
            LetterKind::F => 2,
        }
    }
}

pub type WeilWord = Vec<Letter>;

pub fn word_degree(w: &[Letter]) -> usize {
    w.iter().map(|l| l.degree()).sum()
}

/// A homogeneous element of `W(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilElement {
    pub degree: usize,
    pub coeffs: SparseVec,
}

/// `dim W^k` for `k <= cutoff` from the recurrence `w_k = m w_(k-1) + m w_(k-2)`.
pub fn free_word_dims(m: usize, cutoff: usize) -> Vec<usize> {
    let mut dims = vec![1usize];
    for k in 1..=cutoff {
        let prev2 = if k >= 2 { dims[k - 2] } else { 0 };
        dims.push(m * dims[k - 1] + m * prev2);
    }
    dims
}

/// `dim` of `sum_n C(H) (x) (C(H)/K)^(x)n` in total degree `k`, where a reduced factor of
/// form degree `j >= 1` contributes `j + 1`.
pub fn bimodule_model_dims(m: usize, cutoff: usize) -> Vec<usize> {
    // reduced[k]: weighted count of sequences of reduced factors with total degree k
    let mut reduced = vec![0usize; cutoff + 1];
    reduced[0] = 1;
    for k in 1..=cutoff {
        // a factor of form degree j occupies j + 1 degrees
        for j in 1..k {
            reduced[k] += reduced[k - j - 1] * m.pow(j as u32);
        }
    }
    (0..=cutoff).map(|k| (0..=k).map(|k0| m.pow(k0 as u32) * reduced[k - k0]).sum()).collect()
}

/// Truncated `W(H)` with all operators tabulated per degree.
pub struct WeilAlgebra {
    cforms: Arc<CForms>,
    m: usize,
    cutoff: usize,
    dims: Vec<usize>,
    words: Vec<Vec<WeilWord>>,
    d: Vec<Matrix>,
    /// `i[h][n] : W^n -> W^(n-1)`, with `i[h][0]` empty.
    i: Vec<Vec<Matrix>>,
    l: Vec<Vec<Matrix>>,
    k: Vec<Matrix>,
}

impl WeilAlgebra {
    /// Builds `W(H)` up to `cutoff`; the differential on forms is the Hochschild one.
    pub fn new(hopf: Arc<HopfAlgebra>, cutoff: usize) -> Result<Self, WeilError> {
        let m = hopf.dim();
        let dims = free_word_dims(m, cutoff);
        let bimodule = bimodule_model_dims(m, cutoff);
        if let Some(k) = (0..=cutoff).find(|&k| dims[k] != bimodule[k]) {
            return Err(WeilError::DimensionMismatch { degree: k, free: dims[k], bimodule: bimodule[k] });
        }
        let mut words: Vec<Vec<WeilWord>> = vec![vec![Vec::new()]];
        for n in 1..=cutoff {
            let mut list = Vec::with_capacity(dims[n]);
            for kind in [LetterKind::A, LetterKind::F] {
                let letter_deg = if kind == LetterKind::A { 1 } else { 2 };
                if letter_deg > n {
                    continue;
                }
                for j in 0..m {
                    for rest in &words[n - letter_deg] {
                        let mut w = Vec::with_capacity(rest.len() + 1);
                        w.push(Letter { kind, index: j });
                        w.extend_from_slice(rest);
                        list.push(w);
                    }
                }
            }
            debug_assert_eq!(list.len(), dims[n]);
            words.push(list);
        }
        let cforms = Arc::new(CForms::new(hopf, cutoff));
        let mut w = Self { cforms, m, cutoff, dims, words, d: Vec::new(), i: Vec::new(), l: Vec::new(), k: Vec::new() };
        w.build_operators();
        Ok(w)
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        self.cforms.hopf()
    }

    pub fn cforms(&self) -> &Arc<CForms> {
        &self.cforms
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn words(&self, n: usize) -> &[WeilWord] {
        &self.words[n]
    }

    pub fn letter_label(&self, l: Letter) -> String {
        let name = &self.hopf().labels()[l.index];
        match l.kind {
            LetterKind::A => format!("a[{name}]"),
            LetterKind::F => format!("f[{name}]"),
        }
    }

    pub fn word_label(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&l| self.letter_label(l)).collect()
    }

    /// Index of `l . rest` where `rest` has degree `rest_deg` and index `rest_idx`.
    fn prepend(&self, l: Letter, rest_deg: usize, rest_idx: usize) -> usize {
        let n = rest_deg + l.degree();
        match l.kind {
            LetterKind::A => l.index * self.dims[n - 1] + rest_idx,
            LetterKind::F => self.m * self.dims[n - 1] + l.index * self.dims[n - 2] + rest_idx,
        }
    }

    pub fn index_of(&self, w: &[Letter]) -> usize {
        let mut idx = 0;
        let mut deg = 0;
        for &l in w.iter().rev() {
            idx = self.prepend(l, deg, idx);
            deg += l.degree();
        }
        idx
    }

    fn concat_index(&self, p: usize, i: usize, q: usize, j: usize) -> usize {
        let mut idx = j;
        let mut deg = q;
        for &l in self.words[p][i].iter().rev() {
            idx = self.prepend(l, deg, idx);
            deg += l.degree();
        }
        idx
    }

    pub fn mul(&self, p: usize, u: &SparseVec, q: usize, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::with_capacity(u.nnz() * v.nnz());
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                terms.push((self.concat_index(p, *i, q, *j), a * b));
            }
        }
        SparseVec::from_terms(terms)
    }

    /// `l . v` for `v` of degree `q`.
    fn prepend_vec(&self, l: Letter, q: usize, v: &SparseVec) -> SparseVec {
        SparseVec::from_terms(v.iter().map(|(j, c)| (self.prepend(l, q, *j), c.clone())))
    }

    /// `alpha_W(psi_I)`: the pure `a`-word with the same indices.
    pub fn alpha_index(&self, tuple: &[usize]) -> usize {
        let w: WeilWord = tuple.iter().map(|&j| Letter::a(j)).collect();
        self.index_of(&w)
    }

    fn d_letter(&self, l: Letter) -> SparseVec {
        let dpsi = self.cforms.apply_d(Differential::Hochschild, 1, &SparseVec::unit(l.index));
        let mut terms = Vec::new();
        match l.kind {
            LetterKind::A => {
                for (ab, c) in dpsi.iter() {
                    terms.push((self.alpha_index(&[ab / self.m, ab % self.m]), c.clone()));
                }
                terms.push((self.index_of(&[Letter::f(l.index)]), Scalar::one()));
            }
            LetterKind::F => {
                // -phi(d psi) with phi(psi_a psi_b) = f_a a_b - a_a f_b
                for (ab, c) in dpsi.iter() {
                    let (a, b) = (ab / self.m, ab % self.m);
                    terms.push((self.index_of(&[Letter::f(a), Letter::a(b)]), -c.clone()));
                    terms.push((self.index_of(&[Letter::a(a), Letter::f(b)]), c.clone()));
                }
            }
        }
        SparseVec::from_terms(terms)
    }

    /// `psi_j o ad(e_h)` as a combination of letters of the same kind.
    fn lie_letter(&self, h: usize, l: Letter) -> Vec<(Letter, Scalar)> {
        let ad = &self.hopf().ad_matrices()[h];
        ad.row(l.index).iter().map(|(i, c)| (Letter { kind: l.kind, index: *i }, c.clone())).collect()
    }

    /// `i_h a_j = psi_j(h) - eps(h) psi_j(1)`, `i_h f_j = 0`.
    fn contract_letter(&self, h: usize, l: Letter) -> Scalar {
        match l.kind {
            LetterKind::F => Scalar::zero(),
            LetterKind::A => {
                let hopf = self.hopf();
                let delta = Scalar::from(i64::from(h == l.index));
                delta - &hopf.counit_vec()[h] * &hopf.unit_vec().get(l.index)
            }
        }
    }

    fn build_operators(&mut self) {
        let n_max = self.cutoff;
        let keys = self.m;
        let hopf = self.hopf().clone();
        let mut l: Vec<Vec<Matrix>> = vec![Vec::new(); keys];
        let mut i: Vec<Vec<Matrix>> = vec![Vec::new(); keys];
        let mut k = Vec::new();
        let mut d = Vec::new();
        for n in 0..=n_max {
            for h in 0..keys {
                let cols: Vec<SparseVec> = (0..self.dims[n])
                    .map(|w| {
                        if n == 0 {
                            return SparseVec::single(0, hopf.counit_vec()[h].clone());
                        }
                        let first = self.words[n][w][0];
                        let q = n - first.degree();
                        let rest = self.index_of(&self.words[n][w][1..]);
                        let mut acc = SparseVec::new();
                        for (h1, h2, c) in hopf.coproduct_basis(h) {
                            let tail = l[*h2][q].column(rest);
                            for (letter, x) in self.lie_letter(*h1, first) {
                                acc = acc.add_scaled(&(c * &x), &self.prepend_vec(letter, q, &tail));
                            }
                        }
                        acc
                    })
                    .collect();
                l[h].push(Matrix::from_columns(self.dims[n], &cols));
            }
            for h in 0..keys {
                if n == 0 {
                    i[h].push(Matrix::zeros(0, 1));
                    continue;
                }
                let cols: Vec<SparseVec> = (0..self.dims[n])
                    .map(|w| {
                        let first = self.words[n][w][0];
                        let q = n - first.degree();
                        let rest = self.index_of(&self.words[n][w][1..]);
                        let mut acc = SparseVec::new();
                        if first.kind == LetterKind::A {
                            for (h1, h2, c) in hopf.coproduct_basis(h) {
                                let s = self.contract_letter(*h1, first);
                                if !s.is_zero() {
                                    acc = acc.add_scaled(&(c * &s), &l[*h2][q].column(rest));
                                }
                            }
                        }
                        if q > 0 {
                            let sign = if first.degree() % 2 == 0 { Scalar::one() } else { Scalar::from(-1) };
                            let inner = i[h][q].column(rest);
                            acc = acc.add_scaled(&sign, &self.prepend_vec(first, q - 1, &inner));
                        }
                        acc
                    })
                    .collect();
                i[h].push(Matrix::from_columns(self.dims[n - 1], &cols));
            }
            if n == 0 {
                k.push(Matrix::zeros(0, 1));
            } else {
                let cols: Vec<SparseVec> = (0..self.dims[n])
                    .map(|w| {
                        let first = self.words[n][w][0];
                        let q = n - first.degree();
                        let rest = self.index_of(&self.words[n][w][1..]);
                        let mut acc = SparseVec::new();
                        if first.kind == LetterKind::F {
                            acc = SparseVec::unit(self.prepend(Letter::a(first.index), q, rest));
                        }
                        if q > 0 {
                            let sign = if first.degree() % 2 == 0 { Scalar::one() } else { Scalar::from(-1) };
                            let inner = k[q].column(rest);
                            acc = acc.add_scaled(&sign, &self.prepend_vec(first, q - 1, &inner));
                        }
                        acc
                    })
                    .collect();
                k.push(Matrix::from_columns(self.dims[n - 1], &cols));
            }
        }
        for n in 0..n_max {
            let cols: Vec<SparseVec> = (0..self.dims[n])
                .map(|w| {
                    if n == 0 {
                        return SparseVec::new();
                    }
                    let first = self.words[n][w][0];
                    let q = n - first.degree();
                    let rest = self.index_of(&self.words[n][w][1..]);
                    let dl = self.d_letter(first);
                    let mut acc = self.mul(first.degree() + 1, &dl, q, &SparseVec::unit(rest));
                    if q > 0 {
                        let sign = if first.degree() % 2 == 0 { Scalar::one() } else { Scalar::from(-1) };
                        let inner: &Matrix = &d[q];
                        acc = acc.add_scaled(&sign, &self.prepend_vec(first, q + 1, &inner.column(rest)));
                    }
                    acc
                })
                .collect();
            d.push(Matrix::from_columns(self.dims[n + 1], &cols));
        }
        self.d = d;
        self.i = i;
        self.l = l;
        self.k = k;
    }

    fn check(&self, degree: usize) -> Result<(), WeilError> {
        if degree > self.cutoff {
            return Err(WeilError::Cutoff { degree, cutoff: self.cutoff });
        }
        Ok(())
    }

    pub fn d_matrix(&self, n: usize) -> &Matrix {
        &self.d[n]
    }

    pub fn i_matrix(&self, h: usize, n: usize) -> &Matrix {
        &self.i[h][n]
    }

    pub fn l_matrix(&self, h: usize, n: usize) -> &Matrix {
        &self.l[h][n]
    }

    pub fn k_matrix(&self, n: usize) -> &Matrix {
        &self.k[n]
    }

    pub fn element(&self, degree: usize, coeffs: SparseVec) -> WeilElement {
        WeilElement { degree, coeffs }
    }

    pub fn weil_d(&self, x: &WeilElement) -> Result<WeilElement, WeilError> {
        self.check(x.degree + 1)?;
        Ok(self.element(x.degree + 1, self.d[x.degree].apply(&x.coeffs)))
    }

    fn combine(&self, h: &SparseVec, mats: impl Fn(usize) -> SparseVec) -> SparseVec {
        h.iter().fold(SparseVec::new(), |acc, (k, c)| acc.add_scaled(c, &mats(*k)))
    }

    pub fn weil_i(&self, h: &SparseVec, x: &WeilElement) -> Result<WeilElement, WeilError> {
        self.check(x.degree)?;
        if x.degree == 0 {
            return Ok(self.element(0, SparseVec::new()));
        }
        Ok(self.element(x.degree - 1, self.combine(h, |k| self.i[k][x.degree].apply(&x.coeffs))))
    }

    pub fn weil_l(&self, h: &SparseVec, x: &WeilElement) -> Result<WeilElement, WeilError> {
        self.check(x.degree)?;
        Ok(self.element(x.degree, self.combine(h, |k| self.l[k][x.degree].apply(&x.coeffs))))
    }

    pub fn homotopy_k(&self, x: &WeilElement) -> Result<WeilElement, WeilError> {
        self.check(x.degree)?;
        if x.degree == 0 {
            return Ok(self.element(0, SparseVec::new()));
        }
        Ok(self.element(x.degree - 1, self.k[x.degree].apply(&x.coeffs)))
    }

    /// `i_h(u v)` evaluated by splitting `w = u v` after `split` letters.
    pub fn contract_split(&self, h: usize, w: &[Letter], split: usize) -> SparseVec {
        let (u, v) = w.split_at(split);
        let (p, q) = (word_degree(u), word_degree(v));
        if p == 0 {
            return self.i[h][q].column(self.index_of(v));
        }
        let (ui, vi) = (self.index_of(u), self.index_of(v));
        let mut acc = SparseVec::new();
        for (h1, h2, c) in self.hopf().coproduct_basis(h) {
            let iu = self.i[*h1][p].column(ui);
            let lv = self.l[*h2][q].column(vi);
            acc = acc.add_scaled(c, &self.mul(p - 1, &iu, q, &lv));
        }
        if q > 0 {
            let sign = if p % 2 == 0 { Scalar::one() } else { Scalar::from(-1) };
            acc = acc.add_scaled(&sign, &self.mul(p, &SparseVec::unit(ui), q - 1, &self.i[h][q].column(vi)));
        }
        acc
    }

    /// `alpha_W : C^n -> W^n`.
    pub fn alpha_matrix(&self, n: usize) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.cforms.dim(n))
            .map(|i| SparseVec::unit(self.alpha_index(&self.cforms.tuple(n, i))))
            .collect();
        Matrix::from_columns(self.dims[n], &cols)
    }

    /// `rho : W^n -> C^n`, killing every word that contains an `f`.
    pub fn rho_matrix(&self, n: usize) -> Matrix {
        let cols: Vec<SparseVec> = self.words[n]
            .iter()
            .map(|w| {
                if w.iter().all(|l| l.kind == LetterKind::A) {
                    let t: Vec<usize> = w.iter().map(|l| l.index).collect();
                    SparseVec::unit(self.cforms.index(&t))
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        Matrix::from_columns(self.cforms.dim(n), &cols)
    }

    pub fn alpha_section(&self, degree: usize, psi: &SparseVec) -> Result<WeilElement, WeilError> {
        self.check(degree)?;
        Ok(self.element(degree, self.alpha_matrix(degree).apply(psi)))
    }

    pub fn rho_project(&self, x: &WeilElement) -> Result<SparseVec, WeilError> {
        self.check(x.degree)?;
        Ok(self.rho_matrix(x.degree).apply(&x.coeffs))
    }

    /// `phi_W = d alpha_W - alpha_W d` on `C^n`, for `n < cutoff`.
    pub fn phi_matrix(&self, n: usize) -> Matrix {
        let dc = self.cforms.d_matrix(Differential::Hochschild, n);
        self.d[n].mul(&self.alpha_matrix(n)).sub(&self.alpha_matrix(n + 1).mul(&dc))
    }

    /// `K alpha_W = 0`, `(Kd + dK) alpha_W = deg alpha_W`, `(Kd + dK) d alpha_W = (deg - 1) d alpha_W`
    /// and `K L_h = L_h K`, as matrix identities in every degree the truncation reaches.
    pub fn homotopy_checks(&self) -> Vec<Check> {
        let c = self.cutoff;
        let kd = |n: usize| {
            let up = if n < c { self.k[n + 1].mul(&self.d[n]) } else { Matrix::zeros(self.dims[n], self.dims[n]) };
            if n == 0 {
                up
            } else {
                up.add(&self.d[n - 1].mul(&self.k[n]))
            }
        };
        let witness = |n: usize, lhs: &Matrix, rhs: &Matrix| {
            let (_, col) = lhs.first_difference(rhs).expect("matrices differ");
            self.cforms.label(n, col)
        };
        let mut out = Vec::new();
        for n in 1..=c {
            let lhs = self.k[n].mul(&self.alpha_matrix(n));
            out.push(Check::from_bool("k_alpha", Some(n), lhs.is_zero(), || {
                witness(n, &lhs, &Matrix::zeros(lhs.rows(), lhs.cols()))
            }));
        }
        for n in 0..c {
            let alpha = self.alpha_matrix(n);
            let lhs = kd(n).mul(&alpha);
            let rhs = alpha.scaled(&Scalar::from(n as i64));
            out.push(Check::from_bool("homotopy_alpha", Some(n), lhs == rhs, || witness(n, &lhs, &rhs)));
        }
        for n in 0..c.saturating_sub(1) {
            let d_alpha = self.d[n].mul(&self.alpha_matrix(n));
            let lhs = kd(n + 1).mul(&d_alpha);
            let rhs = d_alpha.scaled(&Scalar::from(n as i64));
            out.push(Check::from_bool("homotopy_d_alpha", Some(n), lhs == rhs, || witness(n, &lhs, &rhs)));
        }
        for n in 1..=c {
            let bad = (0..self.m).find(|&h| self.k[n].mul(&self.l[h][n]) != self.l[h][n - 1].mul(&self.k[n]));
            out.push(Check::new("k_commutes_l", Some(n), bad.map(|h| format!("h={}", self.hopf().labels()[h]))));
        }
        out
    }

    /// `rho alpha_W = id` on `C^n` and `rho d = d rho`.
    pub fn section_checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        for n in 0..=self.cutoff {
            let lhs = self.rho_matrix(n).mul(&self.alpha_matrix(n));
            let id = Matrix::identity(self.cforms.dim(n));
            out.push(Check::from_bool("rho_alpha", Some(n), lhs == id, || {
                self.cforms.label(n, lhs.first_difference(&id).unwrap().1)
            }));
        }
        for n in 0..self.cutoff {
            let lhs = self.rho_matrix(n + 1).mul(&self.d[n]);
            let rhs = self.cforms.d_matrix(Differential::Hochschild, n).mul(&self.rho_matrix(n));
            out.push(Check::from_bool("rho_d", Some(n), lhs == rhs, || {
                self.word_label(&self.words[n][lhs.first_difference(&rhs).unwrap().1])
            }));
        }
        out
    }

    pub fn dga(&self) -> GradedDga {
        let labels = self.words.iter().map(|ws| ws.iter().map(|w| self.word_label(w)).collect()).collect();
        GradedDga::new(
            format!("W({})", self.hopf().name()),
            self.dims.clone(),
            self.d.clone(),
            SparseVec::unit(0),
            labels,
            |p, i, q, j| SparseVec::unit(self.concat_index(p, i, q, j)),
        )
    }

    pub fn operation(self: &Arc<Self>) -> HOperation<HopfAlgebra> {
        let keys = (0..self.m).collect();
        HOperation::new(self.dga(), self.hopf().clone(), keys, Box::new(WeilSource(self.clone())))
    }
}

struct WeilSource(Arc<WeilAlgebra>);

impl OperatorSource<usize> for WeilSource {
    fn contraction(&self, h: &usize, n: usize) -> Matrix {
        self.0.i[*h][n].clone()
    }

    fn lie(&self, h: &usize, n: usize) -> Matrix {
        self.0.l[*h][n].clone()
    }
}

/// Cutoff used when none is given: 5 for `dim H <= 2`, otherwise 4.
pub fn default_cutoff(hopf: &HopfAlgebra) -> usize {
    if hopf.dim() <= 2 {
        5
    } else {
        4
    }
}
