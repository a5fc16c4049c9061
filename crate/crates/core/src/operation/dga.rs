use std::collections::BTreeMap;

use crate::exactla::{Matrix, Scalar, SparseVec};

use super::Check;

/// A graded differential algebra truncated at degree `cutoff`.
///
/// Products are tabulated for `p + q <= cutoff`; differentials exist for `n < cutoff`.
#[derive(Clone, Debug)]
pub struct GradedDga {
    name: String,
    dims: Vec<usize>,
    products: BTreeMap<(usize, usize), Vec<SparseVec>>,
    d: Vec<Matrix>,
    unit: SparseVec,
    labels: Vec<Vec<String>>,
}

impl GradedDga {
    /// `product(p, i, q, j)` is the product of basis element `i` of degree `p` with
    /// basis element `j` of degree `q`.
    pub fn new(
        name: impl Into<String>,
        dims: Vec<usize>,
        d: Vec<Matrix>,
        unit: SparseVec,
        labels: Vec<Vec<String>>,
        product: impl Fn(usize, usize, usize, usize) -> SparseVec,
    ) -> Self {
        let cutoff = dims.len() - 1;
        assert_eq!(d.len(), cutoff, "one differential per degree below the cutoff");
        for (n, m) in d.iter().enumerate() {
            assert_eq!((m.rows(), m.cols()), (dims[n + 1], dims[n]), "differential shape in degree {n}");
        }
        assert_eq!(labels.len(), dims.len());
        let mut products = BTreeMap::new();
        for p in 0..=cutoff {
            for q in 0..=cutoff - p {
                let mut table = Vec::with_capacity(dims[p] * dims[q]);
                for i in 0..dims[p] {
                    for j in 0..dims[q] {
                        table.push(product(p, i, q, j));
                    }
                }
                products.insert((p, q), table);
            }
        }
        Self { name: name.into(), dims, products, d, unit, labels }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cutoff(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// `d : Omega^n -> Omega^(n+1)`, for `n < cutoff`.
    pub fn d(&self, n: usize) -> &Matrix {
        &self.d[n]
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn label(&self, n: usize, i: usize) -> &str {
        &self.labels[n][i]
    }

    pub fn product_basis(&self, p: usize, i: usize, q: usize, j: usize) -> &SparseVec {
        &self.products[&(p, q)][i * self.dims[q] + j]
    }

    pub fn mul(&self, p: usize, u: &SparseVec, q: usize, v: &SparseVec) -> SparseVec {
        let table = &self.products[&(p, q)];
        let dq = self.dims[q];
        let mut terms = Vec::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                let ab = a * b;
                for (k, c) in table[i * dq + j].iter() {
                    terms.push((*k, &ab * c));
                }
            }
        }
        SparseVec::from_terms(terms)
    }

    /// Left multiplication by `u` (degree `p`) as a matrix `Omega^q -> Omega^(p+q)`.
    pub fn left_mul_matrix(&self, p: usize, u: &SparseVec, q: usize) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dims[q]).map(|j| self.mul(p, u, q, &SparseVec::unit(j))).collect();
        Matrix::from_columns(self.dims[p + q], &cols)
    }

    pub fn identity(&self, n: usize) -> Matrix {
        Matrix::identity(self.dims[n])
    }

    /// Associativity, unit, Leibniz rule and `d^2 = 0` on basis elements.
    pub fn check(&self) -> Vec<Check> {
        let n = self.cutoff();
        let mut out = Vec::new();
        let one = Scalar::one();
        let mut unit_witness = None;
        for p in 0..=n {
            for i in 0..self.dims[p] {
                let e = SparseVec::unit(i);
                if self.mul(0, &self.unit, p, &e) != e || self.mul(p, &e, 0, &self.unit) != e {
                    unit_witness.get_or_insert_with(|| format!("{} in degree {p}", self.label(p, i)));
                }
            }
        }
        out.push(Check::new("dga_unit", None, unit_witness));
        for total in 0..=n {
            let mut witness = None;
            'outer: for p in 0..=total {
                for q in 0..=total - p {
                    let r = total - p - q;
                    for i in 0..self.dims[p] {
                        for j in 0..self.dims[q] {
                            let ij = self.product_basis(p, i, q, j);
                            for k in 0..self.dims[r] {
                                let ek = SparseVec::unit(k);
                                let left = self.mul(p + q, ij, r, &ek);
                                let jk = self.product_basis(q, j, r, k);
                                let right = self.mul(p, &SparseVec::unit(i), q + r, jk);
                                if left != right {
                                    witness = Some(format!(
                                        "({}, {}, {})",
                                        self.label(p, i),
                                        self.label(q, j),
                                        self.label(r, k)
                                    ));
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
            out.push(Check::new("dga_associativity", Some(total), witness));
        }
        for total in 0..n {
            let mut witness = None;
            'leib: for p in 0..=total {
                let q = total - p;
                let sign = if p % 2 == 0 { one.clone() } else { -&one };
                for i in 0..self.dims[p] {
                    let ei = SparseVec::unit(i);
                    let di = self.d[p].apply(&ei);
                    for j in 0..self.dims[q] {
                        let ej = SparseVec::unit(j);
                        let left = self.d[total].apply(self.product_basis(p, i, q, j));
                        let right = self
                            .mul(p + 1, &di, q, &ej)
                            .add_scaled(&sign, &self.mul(p, &ei, q + 1, &self.d[q].apply(&ej)));
                        if left != right {
                            witness = Some(format!("({}, {})", self.label(p, i), self.label(q, j)));
                            break 'leib;
                        }
                    }
                }
            }
            out.push(Check::new("dga_leibniz", Some(total), witness));
        }
        for k in 0..n.saturating_sub(1) {
            let dd = self.d[k + 1].mul(&self.d[k]);
            let witness = dd.first_difference(&Matrix::zeros(dd.rows(), dd.cols())).map(|(_, j)| self.label(k, j).to_string());
            out.push(Check::new("d_squared", Some(k), witness));
        }
        out
    }
}
