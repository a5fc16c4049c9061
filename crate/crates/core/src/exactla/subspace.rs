use super::{kernel_basis, rref, Matrix, Scalar, SparseVec};

/// A linear subspace of `K^n`, held as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: (0..ambient).map(SparseVec::unit).collect(), pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: &[SparseVec]) -> Self {
        let r = rref(&Matrix::from_rows(ambient, vectors.to_vec()));
        Self { ambient, basis: r.rows, pivots: r.pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// The residue of `v` after clearing every pivot column; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r.get(p);
            if !c.is_zero() {
                r = r.add_scaled(&-c, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis; `None` if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        if !self.contains(v) {
            return None;
        }
        Some(SparseVec::from_terms(self.pivots.iter().enumerate().map(|(k, &p)| (k, v.get(p)))))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    /// Rows of a matrix whose kernel is exactly this subspace.
    pub fn annihilator(&self) -> Matrix {
        let ann = kernel_basis(&Matrix::from_rows(self.ambient, self.basis.clone()));
        Matrix::from_rows(self.ambient, ann)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.dim() == 0 || other.is_full() {
            return self.clone();
        }
        if other.dim() == 0 || self.is_full() {
            return other.clone();
        }
        let ann = other.annihilator();
        let coeffs = kernel_basis(&ann.mul(&Matrix::from_rows(self.ambient, self.basis.clone()).transpose()));
        let vecs: Vec<SparseVec> = coeffs.iter().map(|c| self.combine(c)).collect();
        Subspace::span(self.ambient, &vecs)
    }

    pub fn combine(&self, coeffs: &SparseVec) -> SparseVec {
        coeffs.iter().fold(SparseVec::new(), |acc, (k, c)| acc.add_scaled(c, &self.basis[*k]))
    }

    /// `{v : m v in target}`.
    pub fn preimage(m: &Matrix, target: &Subspace) -> Subspace {
        if target.is_full() {
            return Subspace::full(m.cols());
        }
        let k = kernel_basis(&target.annihilator().mul(m));
        Subspace::span(m.cols(), &k)
    }

    pub fn kernel(m: &Matrix) -> Subspace {
        Subspace::span(m.cols(), &kernel_basis(m))
    }

    pub fn image(m: &Matrix, source: &Subspace) -> Subspace {
        let imgs: Vec<SparseVec> = source.basis.iter().map(|v| m.apply(v)).collect();
        Subspace::span(m.rows(), &imgs)
    }

    /// Basis vectors of `self` whose classes form a basis of `self / sub`, picked greedily.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<SparseVec> {
        let mut acc = sub.clone();
        let mut chosen = Vec::new();
        for v in &self.basis {
            if !acc.contains(v) {
                chosen.push(v.clone());
                acc = acc.sum(&Subspace::span(self.ambient, std::slice::from_ref(v)));
            }
        }
        chosen
    }

    /// Restriction of `m` to this subspace, written in echelon coordinates of both sides.
    pub fn restrict(&self, m: &Matrix, target: &Subspace) -> Option<Matrix> {
        let cols: Option<Vec<SparseVec>> = self.basis.iter().map(|v| target.coordinates(&m.apply(v))).collect();
        cols.map(|c| Matrix::from_columns(target.dim(), &c))
    }

    pub fn scale_free_eq(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }

    pub fn vector_from(&self, coeffs: &[Scalar]) -> SparseVec {
        self.combine(&SparseVec::from_dense(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| Scalar::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn intersection_and_sum() {
        let u = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let w = Subspace::span(3, &[v(&[0, 1, 1]), v(&[1, 1, 0])]);
        let i = u.intersection(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[1, 1, 0])));
        assert_eq!(u.sum(&w).dim(), 3);
    }

    #[test]
    fn preimage_and_complement() {
        let m = Matrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]]);
        let t = Subspace::span(2, &[v(&[1, 0])]);
        let p = Subspace::preimage(&m, &t);
        assert_eq!(p.dim(), 2);
        assert!(p.contains(&v(&[1, -1, 0])));
        let full = Subspace::full(3);
        let comp = full.complement_of(&p);
        assert_eq!(comp, vec![v(&[0, 0, 1])]);
    }
}
