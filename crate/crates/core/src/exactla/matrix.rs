use std::fmt;

use super::{Scalar, SparseVec};

/// A rectangular matrix stored as sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn scalar(n: usize, c: &Scalar) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(|i| SparseVec::single(i, c.clone())).collect() }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.max_index().is_none_or(|m| m < cols)));
        Self { rows: data.len(), cols, data }
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.iter() {
                buckets[*i].push((j, c.clone()));
            }
        }
        Self {
            rows,
            cols: columns.len(),
            data: buckets.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { rows: rows.len(), cols, data: rows.iter().map(|r| SparseVec::from_dense(r)).collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i].get(j)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_columns(self.cols, &self.data)
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn column(&self, j: usize) -> SparseVec {
        SparseVec::from_sorted(
            self.data
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let c = r.get(j);
                    (!c.is_zero()).then_some((i, c))
                })
                .collect(),
        )
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        debug_assert!(v.max_index().is_none_or(|m| m < self.cols));
        SparseVec::from_sorted(
            self.data
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let c = r.dot(v);
                    (!c.is_zero()).then_some((i, c))
                })
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = vec![Scalar::zero(); rhs.cols];
                let mut touched = false;
                for (k, a) in row.iter() {
                    for (j, b) in rhs.data[*k].iter() {
                        acc[*j] += &(a * b);
                        touched = true;
                    }
                }
                if touched {
                    SparseVec::from_dense(&acc)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        Matrix { rows: self.rows, cols: rhs.cols, data }
    }

    pub fn add_scaled(&self, c: &Scalar, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_scaled(c, b)).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.add_scaled(&Scalar::one(), rhs)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add_scaled(&Scalar::from(-1), rhs)
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scaled(c)).collect() }
    }

    /// Stacks row blocks; all blocks must share the column count.
    pub fn vstack(cols: usize, blocks: &[Matrix]) -> Matrix {
        let mut data = Vec::new();
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
        }
        Matrix { rows: data.len(), cols, data }
    }

    /// Places blocks side by side; all blocks must share the row count.
    pub fn hstack(rows: usize, blocks: &[Matrix]) -> Matrix {
        let mut data = vec![Vec::new(); rows];
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for (i, r) in b.data.iter().enumerate() {
                data[i].extend(r.iter().map(|(j, c)| (j + offset, c.clone())));
            }
            offset += b.cols;
        }
        Matrix { rows, cols: offset, data: data.into_iter().map(SparseVec::from_sorted).collect() }
    }

    /// First entry (row-major) where the two matrices differ.
    pub fn first_difference(&self, rhs: &Matrix) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Some((self.rows.min(rhs.rows), self.cols.min(rhs.cols)));
        }
        self.data.iter().zip(&rhs.data).enumerate().find_map(|(i, (a, b))| {
            let diff = a.sub(b);
            diff.first().map(|(j, _)| (i, *j))
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_i64(&[&[1, 2], &[0, 1], &[3, 0]]);
        let b = Matrix::from_i64(&[&[1, 0, 1], &[2, 1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, Matrix::from_i64(&[&[5, 2, 1], &[2, 1, 0], &[3, 0, 3]]));
        assert_eq!(ab.transpose().transpose(), ab);
        assert_eq!(a.transpose().mul(&Matrix::identity(3)), a.transpose());
    }

    #[test]
    fn stacking() {
        let a = Matrix::identity(2);
        let h = Matrix::hstack(2, &[a.clone(), a.scaled(&Scalar::from(2))]);
        assert_eq!(h, Matrix::from_i64(&[&[1, 0, 2, 0], &[0, 1, 0, 2]]));
        let v = Matrix::vstack(2, &[a.clone(), a]);
        assert_eq!(v.rows(), 4);
        assert_eq!(v.column(1), SparseVec::from_terms([(1, Scalar::one()), (3, Scalar::one())]));
    }
}
