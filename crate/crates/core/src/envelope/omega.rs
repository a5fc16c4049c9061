use std::sync::Arc;

use crate::exactla::{Matrix, SparseVec};
use crate::operation::GradedDga;

use super::algebra::AssocAlgebra;
use super::EnvelopeError;

/// The differential envelope `Omega(A)` truncated at `cutoff`.
///
/// Degree `n` has basis `a_0 da_1 ... da_n` with `a_0` any basis element and each
/// `a_k` a non-unit basis element; the index is `a_0` followed by the slots
/// `a_k - 1` read in base `dim A - 1`, first slot most significant.
#[derive(Clone, Debug)]
pub struct Omega {
    algebra: Arc<AssocAlgebra>,
    dga: GradedDga,
}

impl Omega {
    pub fn new(algebra: Arc<AssocAlgebra>, cutoff: usize) -> Result<Self, EnvelopeError> {
        if cutoff < 1 {
            return Err(EnvelopeError::CutoffTooSmall(cutoff));
        }
        let shape = Shape { dim: algebra.dim() };
        let dims: Vec<usize> = (0..=cutoff).map(|n| shape.dim(n)).collect();
        let d = (0..cutoff)
            .map(|n| {
                let cols: Vec<SparseVec> = (0..dims[n])
                    .map(|idx| {
                        let (a0, slots) = shape.decode(n, idx);
                        if a0 == 0 {
                            SparseVec::new()
                        } else {
                            SparseVec::unit(shape.encode(0, &[&[a0], slots.as_slice()].concat()))
                        }
                    })
                    .collect();
                Matrix::from_columns(dims[n + 1], &cols)
            })
            .collect();
        let labels = (0..=cutoff).map(|n| (0..dims[n]).map(|i| shape.label(&algebra, n, i)).collect()).collect();
        let dga = GradedDga::new(format!("Omega({})", algebra.name()), dims, d, SparseVec::unit(0), labels, |p, i, q, j| {
            shape.product(&algebra, p, i, q, j)
        });
        Ok(Self { algebra, dga })
    }

    pub fn algebra(&self) -> &Arc<AssocAlgebra> {
        &self.algebra
    }

    pub fn dga(&self) -> &GradedDga {
        &self.dga
    }

    pub fn cutoff(&self) -> usize {
        self.dga.cutoff()
    }

    pub(crate) fn shape(&self) -> Shape {
        Shape { dim: self.algebra.dim() }
    }

    /// `a_0 da_1 ... da_n` for working-basis indices, `a_k >= 1`.
    pub fn basis_index(&self, a0: usize, slots: &[usize]) -> usize {
        self.shape().encode(a0, slots)
    }

    pub fn decode(&self, n: usize, idx: usize) -> (usize, Vec<usize>) {
        self.shape().decode(n, idx)
    }

    /// `omega * b` for a form of degree `n` and `b` in `A`.
    pub fn right_mul(&self, n: usize, omega: &SparseVec, b: &SparseVec) -> SparseVec {
        self.shape().right_mul(&self.algebra, n, omega, b)
    }

    /// `a * omega` for `a` in `A`.
    pub fn left_mul(&self, n: usize, a: &SparseVec, omega: &SparseVec) -> SparseVec {
        self.shape().left_mul(&self.algebra, n, a, omega)
    }

    /// `dx * omega` for a basis element `x` of `A` and `omega` of degree `n`.
    pub fn d_left_mul(&self, n: usize, x: usize, omega: &SparseVec) -> SparseVec {
        let shape = self.shape();
        let mut out = SparseVec::new();
        for (idx, c) in omega.iter() {
            let (b0, ys) = shape.decode(n, *idx);
            // dx b0 = d(x b0) - x db0
            for (k, y) in self.algebra.mul_basis(x, b0).iter().filter(|(k, _)| *k > 0) {
                out = out.add_scaled(&(c * y), &SparseVec::unit(shape.encode(0, &[&[*k], ys.as_slice()].concat())));
            }
            if b0 != 0 {
                out = out.add_scaled(&-c.clone(), &SparseVec::unit(shape.encode(x, &[&[b0], ys.as_slice()].concat())));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Shape {
    dim: usize,
}

impl Shape {
    fn reduced(&self) -> usize {
        self.dim - 1
    }

    pub(crate) fn dim(&self, n: usize) -> usize {
        self.dim * self.reduced().pow(n as u32)
    }

    pub(crate) fn encode(&self, a0: usize, slots: &[usize]) -> usize {
        slots.iter().fold(a0, |acc, &s| acc * self.reduced() + (s - 1))
    }

    pub(crate) fn decode(&self, n: usize, mut idx: usize) -> (usize, Vec<usize>) {
        let r = self.reduced();
        let mut slots = vec![0; n];
        for k in (0..n).rev() {
            slots[k] = idx % r + 1;
            idx /= r;
        }
        (idx, slots)
    }

    fn label(&self, algebra: &AssocAlgebra, n: usize, idx: usize) -> String {
        let (a0, slots) = self.decode(n, idx);
        let labels = algebra.labels();
        let mut parts: Vec<String> = Vec::new();
        if a0 != 0 || n == 0 {
            parts.push(labels[a0].clone());
        }
        parts.extend(slots.iter().map(|&s| format!("d{}", labels[s])));
        parts.join(" ")
    }

    /// Appends `dc` to every term of a degree-`n` form.
    fn append(&self, omega: &SparseVec, c: &SparseVec) -> SparseVec {
        let r = self.reduced();
        let mut terms = Vec::new();
        for (idx, x) in omega.iter() {
            for (k, y) in c.iter().filter(|(k, _)| *k > 0) {
                terms.push((idx * r + (k - 1), x * y));
            }
        }
        SparseVec::from_terms(terms)
    }

    /// `(a_0 da_1 ... da_n) b` by `(da_n) b = d(a_n b) - a_n db`, right to left.
    fn right_mul_basis(&self, algebra: &AssocAlgebra, n: usize, idx: usize, b: usize) -> SparseVec {
        if n == 0 {
            return algebra.mul_basis(idx, b).clone();
        }
        let (a0, slots) = self.decode(n, idx);
        let an = slots[n - 1];
        let prev = self.encode(a0, &slots[..n - 1]);
        let first = self.append(&SparseVec::unit(prev), algebra.mul_basis(an, b));
        if b == 0 {
            return first;
        }
        let moved = self.right_mul_basis(algebra, n - 1, prev, an);
        first.sub(&self.append(&moved, &SparseVec::unit(b)))
    }

    fn right_mul(&self, algebra: &AssocAlgebra, n: usize, omega: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (idx, x) in omega.iter() {
            for (j, y) in b.iter() {
                out = out.add_scaled(&(x * y), &self.right_mul_basis(algebra, n, *idx, *j));
            }
        }
        out
    }

    fn left_mul(&self, algebra: &AssocAlgebra, n: usize, a: &SparseVec, omega: &SparseVec) -> SparseVec {
        let tail = self.reduced().pow(n as u32);
        let mut out = SparseVec::new();
        for (idx, x) in omega.iter() {
            let (b0, rest) = (idx / tail, idx % tail);
            for (i, y) in a.iter() {
                let prod = algebra.mul_basis(*i, b0).map_indices(|k| k * tail + rest);
                out = out.add_scaled(&(x * y), &prod);
            }
        }
        out
    }

    fn product(&self, algebra: &AssocAlgebra, p: usize, i: usize, q: usize, j: usize) -> SparseVec {
        let tail = self.reduced().pow(q as u32);
        let (b0, rest) = (j / tail, j % tail);
        self.right_mul_basis(algebra, p, i, b0).map_indices(|k| k * tail + rest)
    }
}
