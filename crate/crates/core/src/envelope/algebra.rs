use crate::exactla::{Matrix, Scalar, SparseVec};

use super::EnvelopeError;

/// A finite-dimensional unital associative algebra over the rationals.
///
/// The basis is changed so that the unit is basis vector 0; the remaining basis
/// vectors span the fixed complement of the unit line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocAlgebra {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<SparseVec>>,
    /// Original index replaced by the unit.
    pivot: usize,
    /// Original unit vector.
    unit: SparseVec,
}

pub const ALGEBRA_FIXTURE_NAMES: [&str; 3] = ["m2", "qz2", "upper2"];

impl AssocAlgebra {
    /// `table[i][j]` is `e_i e_j` in the original basis, `unit` the unit in that basis.
    pub fn new(name: &str, labels: &[&str], table: Vec<Vec<SparseVec>>, unit: SparseVec) -> Result<Self, EnvelopeError> {
        let n = labels.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(EnvelopeError::Shape(format!("product table must be {n} x {n}")));
        }
        if table.iter().flatten().chain(std::iter::once(&unit)).any(|v| v.max_index().is_some_and(|k| k >= n)) {
            return Err(EnvelopeError::Shape("basis index out of range".into()));
        }
        let mul = |u: &SparseVec, v: &SparseVec| {
            let mut out = SparseVec::new();
            for (i, a) in u.iter() {
                for (j, b) in v.iter() {
                    out = out.add_scaled(&(a * b), &table[*i][*j]);
                }
            }
            out
        };
        for i in 0..n {
            let e = SparseVec::unit(i);
            if mul(&unit, &e) != e || mul(&e, &unit) != e {
                return Err(EnvelopeError::NoUnit(labels[i].to_string()));
            }
            for j in 0..n {
                for k in 0..n {
                    let lhs = mul(&table[i][j], &SparseVec::unit(k));
                    let rhs = mul(&e, &table[j][k]);
                    if lhs != rhs {
                        return Err(EnvelopeError::NotAssociative(format!("({}, {}, {})", labels[i], labels[j], labels[k])));
                    }
                }
            }
        }
        let pivot = unit.first().map(|(k, _)| *k).ok_or_else(|| EnvelopeError::NoUnit("zero unit".into()))?;
        let mut internal_labels = vec!["1".to_string()];
        internal_labels.extend((0..n).filter(|&k| k != pivot).map(|k| labels[k].to_string()));
        let mut out = Self { name: name.into(), labels: internal_labels, table: Vec::new(), pivot, unit };
        let basis: Vec<SparseVec> = (0..n).map(|k| out.from_internal(&SparseVec::unit(k))).collect();
        out.table = basis.iter().map(|u| basis.iter().map(|v| out.to_internal(&mul(u, v))).collect()).collect();
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Labels of the working basis; index 0 is the unit `1`.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn mul(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out = out.add_scaled(&(a * b), &self.table[*i][*j]);
            }
        }
        out
    }

    pub fn commutator(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        self.mul(u, v).sub(&self.mul(v, u))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    fn original_index(&self, k: usize) -> usize {
        if k <= self.pivot {
            k - 1
        } else {
            k
        }
    }

    /// Coordinates in the original basis to the working basis.
    pub fn to_internal(&self, v: &SparseVec) -> SparseVec {
        let up = self.unit.get(self.pivot);
        let vp = v.get(self.pivot);
        let ratio = vp.checked_div(&up).expect("unit pivot is nonzero");
        let n = self.dim();
        let mut terms = vec![(0, ratio.clone())];
        for k in 1..n {
            let o = self.original_index(k);
            terms.push((k, &v.get(o) - &(&ratio * &self.unit.get(o))));
        }
        SparseVec::from_terms(terms)
    }

    /// Coordinates in the working basis to the original basis.
    pub fn from_internal(&self, w: &SparseVec) -> SparseVec {
        let mut out = self.unit.scaled(&w.get(0));
        for (k, c) in w.iter().filter(|(k, _)| *k > 0) {
            out = out.add(&SparseVec::single(self.original_index(*k), c.clone()));
        }
        out
    }

    /// The inner derivation `a -> [x, a]` in the working basis, `x` in original coordinates.
    pub fn inner_derivation(&self, x: &SparseVec) -> Matrix {
        let x = self.to_internal(x);
        let cols: Vec<SparseVec> = (0..self.dim()).map(|k| self.commutator(&x, &SparseVec::unit(k))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Whether `m` is a derivation; returns the first failing pair.
    pub fn derivation_defect(&self, m: &Matrix) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = m.apply(&self.table[i][j]);
                let rhs = self.mul(&m.column(i), &SparseVec::unit(j)).add(&self.mul(&SparseVec::unit(i), &m.column(j)));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

fn matrix_units() -> Vec<Vec<SparseVec>> {
    // E_ab E_cd = delta_bc E_ad, index 2a + b
    (0..4)
        .map(|i| (0..4).map(|j| if i % 2 == j / 2 { SparseVec::unit(2 * (i / 2) + j % 2) } else { SparseVec::new() }).collect())
        .collect()
}

/// `m2` (2x2 matrices), `qz2` (the group algebra of Z/2) or `upper2` (upper triangular 2x2).
pub fn algebra_fixture(name: &str) -> Result<AssocAlgebra, EnvelopeError> {
    let one = Scalar::one();
    match name {
        "m2" => AssocAlgebra::new(
            "M2(Q)",
            &["E11", "E12", "E21", "E22"],
            matrix_units(),
            SparseVec::from_terms([(0, one.clone()), (3, one)]),
        ),
        "qz2" => {
            let t = vec![vec![SparseVec::unit(0), SparseVec::unit(1)], vec![SparseVec::unit(1), SparseVec::unit(0)]];
            AssocAlgebra::new("Q[Z/2]", &["1", "s"], t, SparseVec::unit(0))
        }
        "upper2" => {
            // E11, E12, E22 inside the matrix units 0, 1, 3
            let full = matrix_units();
            let pos = [0, 1, 3];
            let back = |v: &SparseVec| SparseVec::from_terms(v.iter().map(|(k, c)| (pos.iter().position(|p| p == k).unwrap(), c.clone())));
            let t = pos.iter().map(|&i| pos.iter().map(|&j| back(&full[i][j])).collect()).collect();
            AssocAlgebra::new("T2(Q)", &["E11", "E12", "E22"], t, SparseVec::from_terms([(0, one.clone()), (2, one)]))
        }
        _ => Err(EnvelopeError::UnknownFixture(name.into())),
    }
}
