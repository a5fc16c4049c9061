use crate::exactla::{Matrix, Scalar, SparseVec};

use super::ClassicalError;

/// A finite-dimensional Lie algebra over the rationals, by structure constants
/// `[X_i, X_j] = sum_k c^k_ij X_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    brackets: Vec<Vec<SparseVec>>,
}

pub const LIE_CATALOG_NAMES: [&str; 4] = ["abelian(n)", "sl2", "aff2", "so3"];

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity on every basis triple.
    pub fn new(name: impl Into<String>, labels: Vec<String>, brackets: Vec<Vec<SparseVec>>) -> Result<Self, ClassicalError> {
        let n = labels.len();
        if brackets.len() != n || brackets.iter().any(|r| r.len() != n) {
            return Err(ClassicalError::Shape(format!("bracket table must be {n} x {n}")));
        }
        if brackets.iter().flatten().any(|v| v.max_index().is_some_and(|k| k >= n)) {
            return Err(ClassicalError::Shape("bracket output index out of range".into()));
        }
        let lie = Self { name: name.into(), labels, brackets };
        for i in 0..n {
            for j in 0..n {
                if lie.brackets[i][j] != lie.brackets[j][i].neg() {
                    return Err(ClassicalError::Antisymmetry(lie.labels[i].clone(), lie.labels[j].clone()));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (SparseVec::unit(i), SparseVec::unit(j), SparseVec::unit(k));
                    let sum = lie
                        .bracket(&lie.bracket(&x, &y), &z)
                        .add(&lie.bracket(&lie.bracket(&y, &z), &x))
                        .add(&lie.bracket(&lie.bracket(&z, &x), &y));
                    if !sum.is_zero() {
                        let l = &lie.labels;
                        return Err(ClassicalError::Jacobi(l[i].clone(), l[j].clone(), l[k].clone()));
                    }
                }
            }
        }
        Ok(lie)
    }

    /// Builds the table from `(i, j, k, c)` entries meaning `c^k_ij = c`, filling `c^k_ji = -c`.
    pub fn from_constants(name: &str, labels: &[&str], entries: &[(usize, usize, usize, i64)]) -> Result<Self, ClassicalError> {
        let n = labels.len();
        let mut terms = vec![vec![Vec::new(); n]; n];
        for &(i, j, k, c) in entries {
            if i.max(j).max(k) >= n {
                return Err(ClassicalError::Shape(format!("index out of range in ({i}, {j}, {k})")));
            }
            terms[i][j].push((k, Scalar::from(c)));
            terms[j][i].push((k, Scalar::from(-c)));
        }
        let brackets = terms.into_iter().map(|row| row.into_iter().map(SparseVec::from_terms).collect()).collect();
        Self::new(name, labels.iter().map(|s| s.to_string()).collect(), brackets)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    /// `c^k_ij`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.brackets[i][j].get(k)
    }

    pub fn bracket(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                let ab = a * b;
                terms.extend(self.brackets[*i][*j].iter().map(|(k, c)| (*k, &ab * c)));
            }
        }
        SparseVec::from_terms(terms)
    }

    /// Matrix of `ad X_a = [X_a, -]`.
    pub fn ad_matrix(&self, a: usize) -> Matrix {
        Matrix::from_columns(self.dim(), &self.brackets[a])
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().flatten().all(SparseVec::is_zero)
    }
}

/// `abelian(n)` (also `abelian<n>`), `sl2`, `aff2` and `so3`.
pub fn lie_catalog(name: &str) -> Result<LieAlgebra, ClassicalError> {
    let abelian = name
        .strip_prefix("abelian")
        .map(|rest| rest.trim_start_matches('(').trim_end_matches(')'))
        .and_then(|n| n.parse::<usize>().ok());
    if let Some(n) = abelian {
        if n == 0 {
            return Err(ClassicalError::UnknownCatalog(name.into()));
        }
        let labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        return LieAlgebra::new(format!("abelian({n})"), labels, vec![vec![SparseVec::new(); n]; n]);
    }
    match name {
        // [h,e] = 2e, [h,f] = -2f, [e,f] = h
        "sl2" => LieAlgebra::from_constants("sl2", &["e", "h", "f"], &[(1, 0, 0, 2), (1, 2, 2, -2), (0, 2, 1, 1)]),
        // [x,y] = y
        "aff2" => LieAlgebra::from_constants("aff2", &["x", "y"], &[(0, 1, 1, 1)]),
        "so3" => LieAlgebra::from_constants("so3", &["x", "y", "z"], &[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]),
        _ => Err(ClassicalError::UnknownCatalog(name.into())),
    }
}
