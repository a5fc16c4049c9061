use std::sync::Arc;

use serde::Serialize;

use crate::exactla::{Matrix, SparseVec, Subspace};
use crate::hopf::Lin;
use crate::operation::{basics, cohomology_of, invariants, Check, HOperation, OperatorSource};

use super::gc::{GcAlgebra, Monomial};
use super::lie::LieAlgebra;
use super::uenv::{PbwWord, UEnvelope};
use super::ClassicalError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassicalKind {
    /// `Lambda g*` with the Koszul differential.
    Koszul,
    /// `W(g) = Lambda g* (x) S g*`.
    Weil,
}

/// `i_X` and `L_X` on generators, extended to words of `U(g)` for `L` only.
struct GcSource {
    dims: Vec<usize>,
    i: Vec<Vec<Matrix>>,
    l: Vec<Vec<Matrix>>,
}

impl OperatorSource<PbwWord> for GcSource {
    /// Defined on the unit and on primitive words; graded-commutative operations
    /// admit no contraction by longer words.
    fn contraction(&self, h: &PbwWord, n: usize) -> Matrix {
        match h.as_slice() {
            [] => Matrix::zeros(self.dims[n - 1], self.dims[n]),
            [x] => self.i[*x][n].clone(),
            _ => panic!("no contraction by the word {h:?} on a graded-commutative operation"),
        }
    }

    fn lie(&self, h: &PbwWord, n: usize) -> Matrix {
        h.iter().fold(Matrix::identity(self.dims[n]), |acc, x| acc.mul(&self.l[*x][n]))
    }
}

/// A Lie-algebra operation on a free graded-commutative algebra, seen as an operation of
/// `U(g)` whose contractions live on the unit and the generators.
pub struct ClassicalOperation {
    kind: ClassicalKind,
    lie: Arc<LieAlgebra>,
    algebra: Arc<GcAlgebra>,
    op: HOperation<UEnvelope>,
    envelope: Arc<UEnvelope>,
    connection: Matrix,
}

fn coadjoint(lie: &LieAlgebra, a: usize, gen: impl Fn(usize) -> SparseVec) -> Vec<SparseVec> {
    // L_{X_a} theta^k = -sum_j c^k_aj theta^j
    let n = lie.dim();
    (0..n)
        .map(|k| (0..n).fold(SparseVec::new(), |acc, j| acc.add_scaled(&-lie.constant(a, j, k), &gen(j))))
        .collect()
}

/// `-sum_(i<j) c^k_ij x_i x_j` for degree-1 generators `x`.
fn koszul_values(lie: &LieAlgebra, algebra: &GcAlgebra) -> Vec<SparseVec> {
    let n = lie.dim();
    if algebra.cutoff() < 2 {
        return vec![SparseVec::new(); n];
    }
    (0..n)
        .map(|k| {
            let mut v = SparseVec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let c = lie.constant(i, j, k);
                    if !c.is_zero() {
                        let prod = algebra.mul(1, &algebra.odd_generator(i), 1, &algebra.odd_generator(j));
                        v = v.add_scaled(&-c, &prod);
                    }
                }
            }
            v
        })
        .collect()
}

impl ClassicalOperation {
    /// `Lambda g*` with `d theta^k = -sum_(i<j) c^k_ij theta^i theta^j`, truncated at `cutoff`.
    pub fn koszul(lie: Arc<LieAlgebra>, cutoff: usize) -> Self {
        let n = lie.dim();
        let names = lie.labels().iter().map(|l| format!("th[{l}]")).collect();
        let algebra = GcAlgebra::new(names, Vec::new(), cutoff);
        let d_values = koszul_values(&lie, &algebra);
        let d = (0..cutoff).map(|m| algebra.derivation_matrix(m, 1, &d_values, &[])).collect();
        let connection = Matrix::from_rows(algebra.dim(1), (0..n).map(|k| algebra.odd_generator(k)).collect());
        Self::assemble(ClassicalKind::Koszul, lie, algebra, d, connection)
    }

    /// `W(g)` with `d a_k = a_(d theta^k) + f_k` and `d f_k = sum_(i<j) c^k_ij (f_i a_j - a_i f_j)`.
    pub fn weil(lie: Arc<LieAlgebra>, cutoff: usize) -> Self {
        let n = lie.dim();
        let odd = lie.labels().iter().map(|l| format!("a[{l}]")).collect();
        let even = lie.labels().iter().map(|l| format!("f[{l}]")).collect();
        let algebra = GcAlgebra::new(odd, even, cutoff);
        let mut d_odd = Vec::with_capacity(n);
        let mut d_even = Vec::with_capacity(n);
        let kv = koszul_values(&lie, &algebra);
        for k in 0..n {
            d_odd.push(if cutoff >= 2 { kv[k].add(&algebra.even_generator(k)) } else { SparseVec::new() });
            let mut v = SparseVec::new();
            if cutoff >= 3 {
                for i in 0..n {
                    for j in i + 1..n {
                        let c = lie.constant(i, j, k);
                        if c.is_zero() {
                            continue;
                        }
                        let fa = algebra.mul(2, &algebra.even_generator(i), 1, &algebra.odd_generator(j));
                        let af = algebra.mul(1, &algebra.odd_generator(i), 2, &algebra.even_generator(j));
                        v = v.add_scaled(&c, &fa.sub(&af));
                    }
                }
            }
            d_even.push(v);
        }
        let d = (0..cutoff).map(|m| algebra.derivation_matrix(m, 1, &d_odd, &d_even)).collect();
        let connection = Matrix::from_rows(algebra.dim(1), (0..n).map(|k| algebra.odd_generator(k)).collect());
        Self::assemble(ClassicalKind::Weil, lie, algebra, d, connection)
    }

    fn assemble(kind: ClassicalKind, lie: Arc<LieAlgebra>, algebra: GcAlgebra, d: Vec<Matrix>, connection: Matrix) -> Self {
        let n = lie.dim();
        let cutoff = algebra.cutoff();
        let even_zero = vec![SparseVec::new(); algebra.even_count()];
        let mut i = Vec::with_capacity(n);
        let mut l = Vec::with_capacity(n);
        for a in 0..n {
            let odd_i: Vec<SparseVec> = (0..n).map(|k| if k == a { SparseVec::unit(0) } else { SparseVec::new() }).collect();
            i.push((0..=cutoff).map(|m| algebra.derivation_matrix(m, -1, &odd_i, &even_zero)).collect());
            let odd_l = coadjoint(&lie, a, |j| algebra.odd_generator(j));
            let even_l = if algebra.even_count() > 0 && cutoff >= 2 {
                coadjoint(&lie, a, |j| algebra.even_generator(j))
            } else {
                even_zero.clone()
            };
            l.push((0..=cutoff).map(|m| algebra.derivation_matrix(m, 0, &odd_l, &even_l)).collect());
        }
        let name = match kind {
            ClassicalKind::Koszul => format!("Lambda {}*", lie.name()),
            ClassicalKind::Weil => format!("W({})", lie.name()),
        };
        let dga = algebra.dga(&name, d);
        let envelope = Arc::new(UEnvelope::new(lie.clone()));
        let keys = (0..=n).map(|k| if k == 0 { Vec::new() } else { vec![k - 1] }).collect();
        let source = Box::new(GcSource { dims: algebra.dims(), i, l });
        let op = HOperation::new(dga, envelope.clone(), keys, source);
        Self { kind, lie, algebra: Arc::new(algebra), op, envelope, connection }
    }

    pub fn kind(&self) -> ClassicalKind {
        self.kind
    }

    pub fn lie(&self) -> &Arc<LieAlgebra> {
        &self.lie
    }

    pub fn algebra(&self) -> &GcAlgebra {
        &self.algebra
    }

    pub fn operation(&self) -> &HOperation<UEnvelope> {
        &self.op
    }

    pub fn envelope(&self) -> &Arc<UEnvelope> {
        &self.envelope
    }

    pub fn cutoff(&self) -> usize {
        self.op.cutoff()
    }

    /// Row `k` is `alpha(theta^k)` in degree 1.
    pub fn connection(&self) -> &Matrix {
        &self.connection
    }

    pub fn check_degree(&self, n: usize) -> Result<(), ClassicalError> {
        if n > self.cutoff() {
            return Err(ClassicalError::Cutoff { degree: n, cutoff: self.cutoff() });
        }
        Ok(())
    }

    pub fn i(&self, x: usize, n: usize) -> Arc<Matrix> {
        self.op.i(&vec![x], n)
    }

    pub fn l(&self, x: usize, n: usize) -> Arc<Matrix> {
        self.op.l(&vec![x], n)
    }

    /// `i_v` for `v` in `g` given in coordinates.
    pub fn i_vec(&self, v: &SparseVec, n: usize) -> Matrix {
        let rows = if n == 0 { 0 } else { self.op.dga().dim(n - 1) };
        v.iter().fold(Matrix::zeros(rows, self.op.dga().dim(n)), |acc, (k, c)| acc.add_scaled(c, &self.i(*k, n)))
    }

    pub fn l_vec(&self, v: &SparseVec, n: usize) -> Matrix {
        let dim = self.op.dga().dim(n);
        v.iter().fold(Matrix::zeros(dim, dim), |acc, (k, c)| acc.add_scaled(c, &self.l(*k, n)))
    }

    /// Dimensions of `H^n` for the full, invariant and basic complexes, `n < cutoff`.
    pub fn cohomology_dims(&self, n: usize) -> Result<[usize; 3], ClassicalError> {
        if n >= self.cutoff() {
            return Err(ClassicalError::Cutoff { degree: n, cutoff: self.cutoff() });
        }
        let dga = self.op.dga();
        let spaces = |m: usize| -> [Subspace; 3] {
            [Subspace::full(dga.dim(m)), invariants(&self.op, m).expect("in range"), basics(&self.op, m).expect("in range")]
        };
        let here = spaces(n);
        let prev = if n == 0 { None } else { Some(spaces(n - 1)) };
        let mut out = [0; 3];
        for v in 0..3 {
            let d_prev = prev.as_ref().map(|p| (dga.d(n - 1), &p[v]));
            out[v] = cohomology_of(n, d_prev, dga.d(n), &here[v]).dim;
        }
        Ok(out)
    }

    /// Projection onto the part without curvature letters, written in the basis of
    /// `Lambda g*` in the same degree.
    pub fn rho(&self, n: usize, v: &SparseVec) -> SparseVec {
        let ext = GcAlgebra::new(self.lie.labels().to_vec(), Vec::new(), n.min(self.lie.dim()));
        let basis = self.algebra.basis(n);
        SparseVec::from_terms(v.iter().filter_map(|(i, c)| {
            let m = &basis[*i];
            if !m.even.is_empty() {
                return None;
            }
            ext.index_of(&Monomial { odd: m.odd.clone(), even: Vec::new() }).map(|k| (k, c.clone()))
        }))
    }

    /// Checks special to Lie-algebra operations, see [`lie_operation_checks`].
    pub fn lie_checks(&self) -> Vec<Check> {
        lie_operation_checks(&self.lie, &self.op)
    }

    /// `d` vanishes on basic elements, so the basic complex equals its cohomology.
    pub fn basic_d_vanishes(&self) -> Vec<Check> {
        (0..self.cutoff())
            .map(|m| {
                let b = basics(&self.op, m).expect("in range");
                let d = self.op.dga().d(m);
                let bad = b.basis().iter().position(|v| !d.apply(v).is_zero());
                Check::new("basic_d_zero", Some(m), bad.map(|k| format!("basic vector {k}")))
            })
            .collect()
    }
}

fn letters(v: &SparseVec) -> Lin<PbwWord> {
    v.iter().map(|(k, c)| (vec![*k], c.clone())).collect()
}

/// `[L_X, L_Y] = L_[X,Y]`, `[i_X, L_Y] = i_[X,Y]` and `i_X^2 = 0`, per degree, for an
/// operation of `U(g)` whose keys include the letters of `g`.
pub fn lie_operation_checks(lie: &LieAlgebra, op: &HOperation<UEnvelope>) -> Vec<Check> {
    let n = lie.dim();
    let label = |x: usize| &lie.labels()[x];
    let (i, l) = (|x: usize, m| op.i(&vec![x], m), |x: usize, m| op.l(&vec![x], m));
    let mut out = Vec::new();
    for m in 0..=op.cutoff() {
        let mut liehom = None;
        let mut axop = None;
        let mut square = None;
        for x in 0..n {
            for y in 0..n {
                let br = letters(lie.bracket_basis(x, y));
                let lhs = l(x, m).mul(&l(y, m)).sub(&l(y, m).mul(&l(x, m)));
                if liehom.is_none() && lhs != op.l_lin(&br, m) {
                    liehom = Some(format!("X={}, Y={}", label(x), label(y)));
                }
                if m > 0 {
                    let lhs = i(x, m).mul(&l(y, m)).sub(&l(y, m - 1).mul(&i(x, m)));
                    if axop.is_none() && lhs != op.i_lin(&br, m) {
                        axop = Some(format!("X={}, Y={}", label(x), label(y)));
                    }
                }
            }
            if m > 1 && square.is_none() && !i(x, m - 1).mul(&i(x, m)).is_zero() {
                square = Some(format!("X={}", label(x)));
            }
        }
        out.push(Check::new("Liehom", Some(m), liehom));
        if m > 0 {
            out.push(Check::new("axop", Some(m), axop));
        }
        if m > 1 {
            out.push(Check::new("i_squared", Some(m), square));
        }
    }
    out
}
