use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::classical::{lie_catalog, lie_operation_checks, LieAlgebra, PbwWord, UEnvelope};
use crate::exactla::{Matrix, Scalar, SparseVec};
use crate::hopf::HopfStructure;
use crate::operation::{sign, Check, HOperation, OperatorSource};

use super::algebra::algebra_fixture;
use super::omega::Omega;
use super::EnvelopeError;

/// `L_X` as the derivation of `Omega(A)` extending `rho(X)` and commuting with `d`.
fn lie_matrix(omega: &Omega, rho: &Matrix, n: usize) -> Matrix {
    let dga = omega.dga();
    let cols: Vec<SparseVec> = (0..dga.dim(n))
        .map(|idx| {
            let (a0, slots) = omega.decode(n, idx);
            let mut out = SparseVec::from_terms(rho.column(a0).iter().map(|(k, c)| (omega.basis_index(*k, &slots), c.clone())));
            for t in 0..n {
                for (k, c) in rho.column(slots[t]).iter().filter(|(k, _)| *k > 0) {
                    let mut s = slots.clone();
                    s[t] = *k;
                    out = out.add_scaled(c, &SparseVec::unit(omega.basis_index(a0, &s)));
                }
            }
            out
        })
        .collect();
    Matrix::from_columns(dga.dim(n), &cols)
}

/// `i_X` as the antiderivation with `i_X(a) = 0` and `i_X(da) = rho(X)(a)`.
fn contraction_matrix(omega: &Omega, rho: &Matrix, n: usize) -> Matrix {
    let dga = omega.dga();
    let cols: Vec<SparseVec> = (0..dga.dim(n))
        .map(|idx| {
            let (a0, slots) = omega.decode(n, idx);
            let mut out = SparseVec::new();
            for t in 0..n {
                let prefix = SparseVec::unit(omega.basis_index(a0, &slots[..t]));
                let moved = omega.right_mul(t, &prefix, &rho.column(slots[t]));
                let tail = SparseVec::unit(omega.basis_index(0, &slots[t + 1..]));
                out = out.add_scaled(&sign(t), &dga.mul(t, &moved, n - t - 1, &tail));
            }
            out
        })
        .collect();
    Matrix::from_columns(if n == 0 { 0 } else { dga.dim(n - 1) }, &cols)
}

struct LieSource {
    i: Vec<Vec<Matrix>>,
    l: Vec<Vec<Matrix>>,
    dims: Vec<usize>,
}

impl OperatorSource<PbwWord> for LieSource {
    fn contraction(&self, h: &PbwWord, n: usize) -> Matrix {
        match h.as_slice() {
            [] => Matrix::zeros(self.dims[n - 1], self.dims[n]),
            [x] => self.i[*x][n].clone(),
            _ => panic!("the Lie operation has no contraction by {h:?}; extend it to U(g) first"),
        }
    }

    fn lie(&self, h: &PbwWord, n: usize) -> Matrix {
        h.iter().fold(Matrix::identity(self.dims[n]), |acc, x| acc.mul(&self.l[*x][n]))
    }
}

type FormCache = Mutex<BTreeMap<(PbwWord, Vec<usize>), SparseVec>>;

/// Contractions by arbitrary PBW words, from `i_h(a_0 dx_1 ... dx_n) = a_0 i_h(dx_1 ... dx_n)`,
/// `i_h(dx) = L_h(x) - eps(h) x` and the twisted Leibniz rule.
struct USource {
    omega: Arc<Omega>,
    envelope: Arc<UEnvelope>,
    l: Vec<Vec<Matrix>>,
    pure: FormCache,
}

impl USource {
    fn lie_word(&self, h: &[usize], n: usize) -> Matrix {
        h.iter().fold(Matrix::identity(self.omega.dga().dim(n)), |acc, x| acc.mul(&self.l[*x][n]))
    }

    /// `i_h(dx_1 ... dx_n)`, a form of degree `n - 1`.
    fn pure(&self, h: &PbwWord, xs: &[usize]) -> SparseVec {
        let key = (h.clone(), xs.to_vec());
        if let Some(v) = self.pure.lock().unwrap().get(&key) {
            return v.clone();
        }
        let n = xs.len();
        let x1 = SparseVec::unit(xs[0]);
        let rest = SparseVec::unit(self.omega.basis_index(0, &xs[1..]));
        let mut out = SparseVec::new();
        for (h1, h2, c) in self.envelope.coproduct(h) {
            let first = self.lie_word(&h1, 0).apply(&x1).sub(&x1.scaled(&self.envelope.counit(&h1)));
            if first.is_zero() {
                continue;
            }
            let moved = self.lie_word(&h2, n - 1).apply(&rest);
            out = out.add_scaled(&c, &self.omega.left_mul(n - 1, &first, &moved));
        }
        if n >= 2 {
            let inner = self.pure(h, &xs[1..]);
            out = out.sub(&self.omega.d_left_mul(n - 2, xs[0], &inner));
        }
        self.pure.lock().unwrap().insert(key, out.clone());
        out
    }
}

impl OperatorSource<PbwWord> for USource {
    fn contraction(&self, h: &PbwWord, n: usize) -> Matrix {
        let dga = self.omega.dga();
        let cols: Vec<SparseVec> = (0..dga.dim(n))
            .map(|idx| {
                let (a0, slots) = self.omega.decode(n, idx);
                self.omega.left_mul(n - 1, &SparseVec::unit(a0), &self.pure(h, &slots))
            })
            .collect();
        Matrix::from_columns(dga.dim(n - 1), &cols)
    }

    fn lie(&self, h: &PbwWord, n: usize) -> Matrix {
        self.lie_word(h, n)
    }
}

/// The operation of `g` in `Omega(A)` induced by a Lie homomorphism `rho : g -> Der(A)`.
pub struct EnvelopeOperation {
    omega: Arc<Omega>,
    lie: Arc<LieAlgebra>,
    rho: Vec<Matrix>,
    envelope: Arc<UEnvelope>,
    op: HOperation<UEnvelope>,
    l: Vec<Vec<Matrix>>,
}

impl EnvelopeOperation {
    /// `rho[k]` acts on `A` in the working basis.
    pub fn lift(omega: Arc<Omega>, lie: Arc<LieAlgebra>, rho: Vec<Matrix>) -> Result<Self, EnvelopeError> {
        let a = omega.algebra().clone();
        let n = lie.dim();
        if rho.len() != n || rho.iter().any(|m| m.rows() != a.dim() || m.cols() != a.dim()) {
            return Err(EnvelopeError::Shape(format!("need {n} derivations of size {}", a.dim())));
        }
        for (k, m) in rho.iter().enumerate() {
            if let Some((i, j)) = a.derivation_defect(m) {
                let l = a.labels();
                return Err(EnvelopeError::NotDerivation(format!("{} on ({}, {})", lie.labels()[k], l[i], l[j])));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let lhs = rho[x].mul(&rho[y]).sub(&rho[y].mul(&rho[x]));
                let rhs = lie.bracket_basis(x, y).iter().fold(Matrix::zeros(a.dim(), a.dim()), |acc, (k, c)| acc.add_scaled(c, &rho[*k]));
                if lhs != rhs {
                    return Err(EnvelopeError::BracketMismatch(lie.labels()[x].clone(), lie.labels()[y].clone()));
                }
            }
        }
        let cutoff = omega.cutoff();
        let l: Vec<Vec<Matrix>> = rho.iter().map(|r| (0..=cutoff).map(|m| lie_matrix(&omega, r, m)).collect()).collect();
        let i = rho.iter().map(|r| (0..=cutoff).map(|m| contraction_matrix(&omega, r, m)).collect()).collect();
        let dims = omega.dga().dims().to_vec();
        let envelope = Arc::new(UEnvelope::new(lie.clone()));
        let keys = (0..=n).map(|k| if k == 0 { Vec::new() } else { vec![k - 1] }).collect();
        let source = Box::new(LieSource { i, l: l.clone(), dims });
        let op = HOperation::new(omega.dga().clone(), envelope.clone(), keys, source);
        Ok(Self { omega, lie, rho, envelope, op, l })
    }

    /// Inner derivations `a -> [x_k, a]`, the `x_k` given in the algebra's original basis.
    pub fn inner(omega: Arc<Omega>, lie: Arc<LieAlgebra>, elements: &[SparseVec]) -> Result<Self, EnvelopeError> {
        let rho = elements.iter().map(|x| omega.algebra().inner_derivation(x)).collect();
        Self::lift(omega, lie, rho)
    }

    pub fn omega(&self) -> &Arc<Omega> {
        &self.omega
    }

    pub fn lie(&self) -> &Arc<LieAlgebra> {
        &self.lie
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    /// The Lie operation, with keys the unit and the letters of `g`.
    pub fn operation(&self) -> &HOperation<UEnvelope> {
        &self.op
    }

    /// Axioms of a `g`-operation, per degree.
    pub fn lie_checks(&self) -> Vec<Check> {
        let mut out = lie_operation_checks(&self.lie, &self.op);
        // L_X restricted to A is rho(X)
        let bad = (0..self.lie.dim()).find(|&x| self.op.l(&vec![x], 0).as_ref() != &self.rho[x]);
        out.push(Check::new("L_on_A", Some(0), bad.map(|x| format!("X={}", self.lie.labels()[x]))));
        out
    }

    /// The unique extension to an operation of `U(g)`, with keys the PBW words of length `<= max_len`.
    pub fn extend_to_u(&self, max_len: usize) -> HOperation<UEnvelope> {
        let source = Box::new(USource {
            omega: self.omega.clone(),
            envelope: self.envelope.clone(),
            l: self.l.clone(),
            pure: Mutex::new(BTreeMap::new()),
        });
        HOperation::new(self.omega.dga().clone(), self.envelope.clone(), self.envelope.pbw_words(max_len), source)
    }

    /// Both sides of `i_(X^2)(f dg - dg f) = -2 L_X(g) L_X(f) + [f, L_(X^2)(g)]` for `f, g` in `A`.
    pub fn obstruction(&self, extended: &HOperation<UEnvelope>, x: usize, f: &SparseVec, g: &SparseVec) -> ObstructionReport {
        let a = self.omega.algebra();
        let dga = self.omega.dga();
        let dg = dga.d(0).apply(g);
        let form = dga.mul(0, f, 1, &dg).sub(&dga.mul(1, &dg, 0, f));
        let lhs = extended.i(&vec![x, x], 1).apply(&form);
        let (lf, lg) = (self.rho[x].apply(f), self.rho[x].apply(g));
        let witness = a.mul(&lg, &lf);
        let l2g = self.rho[x].apply(&lg);
        let rhs = witness.scaled(&Scalar::from(-2)).add(&a.commutator(f, &l2g));
        ObstructionReport {
            letter: self.lie.labels()[x].clone(),
            holds: lhs == rhs,
            witness_nonzero: !witness.is_zero(),
            lhs,
            rhs,
            witness,
        }
    }
}

pub const ACTION_FIXTURE_NAMES: [&str; 4] = ["m2-sl2", "upper2-aff2", "upper2-abelian", "qz2-zero"];

/// Named Lie actions on the algebra fixtures, by inner derivations unless stated:
/// `sl2` on `M2` by `e = E12`, `h = E11 - E22`, `f = E21`; `aff2` on upper triangular
/// matrices by `x = E11`, `y = E12`; `abelian(1)` by `E12`; `abelian(1)` acting by zero on `Q[x]/x^2`.
pub fn action_fixture(name: &str, cutoff: usize) -> Result<EnvelopeOperation, EnvelopeError> {
    let omega = |a: &str| -> Result<Arc<Omega>, EnvelopeError> { Ok(Arc::new(Omega::new(Arc::new(algebra_fixture(a)?), cutoff)?)) };
    let lie = |l: &str| Arc::new(lie_catalog(l).expect("catalog Lie algebra"));
    match name {
        "m2-sl2" => {
            let one = Scalar::one();
            let h = SparseVec::from_terms([(0, one.clone()), (3, -one)]);
            EnvelopeOperation::inner(omega("m2")?, lie("sl2"), &[SparseVec::unit(1), h, SparseVec::unit(2)])
        }
        "upper2-aff2" => EnvelopeOperation::inner(omega("upper2")?, lie("aff2"), &[SparseVec::unit(0), SparseVec::unit(1)]),
        "upper2-abelian" => EnvelopeOperation::inner(omega("upper2")?, lie("abelian(1)"), &[SparseVec::unit(1)]),
        "qz2-zero" => EnvelopeOperation::lift(omega("qz2")?, lie("abelian(1)"), vec![Matrix::zeros(2, 2)]),
        other => Err(EnvelopeError::UnknownFixture(other.into())),
    }
}

/// Evaluation of the identity showing that `U(g)`-operations are not graded commutative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub letter: String,
    pub lhs: SparseVec,
    pub rhs: SparseVec,
    pub holds: bool,
    /// `L_X(g) L_X(f)`.
    pub witness: SparseVec,
    pub witness_nonzero: bool,
}
