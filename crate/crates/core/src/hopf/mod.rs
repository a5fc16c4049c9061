//! Finite-dimensional Hopf algebras given by structure constants.

mod catalog;

pub use catalog::{catalog, group_algebra, taft, CATALOG_NAMES};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::exactla::{Field, Matrix, Scalar, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("{family} axiom fails at {witness}")]
    Axiom { family: &'static str, witness: String },
    #[error("malformed structure constants: {0}")]
    Shape(String),
    #[error("unknown catalog algebra `{0}`")]
    UnknownCatalog(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Linear combinations over an arbitrary basis key.
pub type Lin<K> = BTreeMap<K, Scalar>;

pub fn lin_add<K: Ord>(acc: &mut Lin<K>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn lin_single<K: Ord>(k: K) -> Lin<K> {
    let mut l = Lin::new();
    l.insert(k, Scalar::one());
    l
}

/// The Hopf-algebra interface shared by finite structure-constant algebras and
/// enveloping algebras addressed by PBW words.
pub trait HopfStructure: Send + Sync {
    type Key: Clone + Ord + fmt::Debug + Send + Sync;

    fn unit(&self) -> Lin<Self::Key>;
    fn counit(&self, k: &Self::Key) -> Scalar;
    fn coproduct(&self, k: &Self::Key) -> Vec<(Self::Key, Self::Key, Scalar)>;
    fn antipode(&self, k: &Self::Key) -> Lin<Self::Key>;
    fn product(&self, a: &Self::Key, b: &Self::Key) -> Lin<Self::Key>;
    fn label(&self, k: &Self::Key) -> String;

    fn mul_lin(&self, a: &Lin<Self::Key>, b: &Lin<Self::Key>) -> Lin<Self::Key> {
        let mut out = Lin::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                let c = ca * cb;
                for (k, x) in self.product(ka, kb) {
                    lin_add(&mut out, k, &c * &x);
                }
            }
        }
        out
    }

    fn counit_lin(&self, a: &Lin<Self::Key>) -> Scalar {
        a.iter().fold(Scalar::zero(), |acc, (k, c)| acc + c * &self.counit(k))
    }

    /// Right adjoint action `ad(h) g = sum S(h1) g h2`.
    fn ad(&self, h: &Self::Key, g: &Self::Key) -> Lin<Self::Key> {
        let mut out = Lin::new();
        let gl = lin_single(g.clone());
        for (h1, h2, c) in self.coproduct(h) {
            let left = self.mul_lin(&self.antipode(&h1), &gl);
            for (k, x) in self.mul_lin(&left, &lin_single(h2)) {
                lin_add(&mut out, k, &c * &x);
            }
        }
        out
    }

    fn ad_lin(&self, h: &Lin<Self::Key>, g: &Lin<Self::Key>) -> Lin<Self::Key> {
        let mut out = Lin::new();
        for (kh, ch) in h {
            for (kg, cg) in g {
                let c = ch * cg;
                for (k, x) in self.ad(kh, kg) {
                    lin_add(&mut out, k, &c * &x);
                }
            }
        }
        out
    }
}

/// Raw structure constants, not yet validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfParts {
    pub name: String,
    pub field: Field,
    pub labels: Vec<String>,
    /// `product[i][j] = e_i e_j`.
    pub product: Vec<Vec<SparseVec>>,
    pub unit: SparseVec,
    /// `coproduct[i]` lists `(a, b, c)` for the terms `c e_a (x) e_b`.
    pub coproduct: Vec<Vec<(usize, usize, Scalar)>>,
    pub counit: Vec<Scalar>,
    pub antipode: Vec<SparseVec>,
}

/// Result of one axiom family check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub family: &'static str,
    pub witness: Option<String>,
}

impl AxiomOutcome {
    pub fn pass(&self) -> bool {
        self.witness.is_none()
    }
}

pub const AXIOM_FAMILIES: [&str; 5] = ["algebra", "coalgebra", "coproduct_hom", "counit_hom", "antipode"];

/// Sparse element of `H^(x)k`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Tensor {
    pub order: usize,
    pub terms: BTreeMap<Vec<usize>, Scalar>,
}

impl Tensor {
    fn add_term(&mut self, idx: Vec<usize>, c: Scalar) {
        lin_add(&mut self.terms, idx, c);
    }
}

/// A validated finite-dimensional Hopf algebra.
pub struct HopfAlgebra {
    parts: HopfParts,
    iterated: Mutex<BTreeMap<(usize, usize), Arc<Tensor>>>,
    ad_matrices: OnceLock<Vec<Matrix>>,
}

impl Clone for HopfAlgebra {
    fn clone(&self) -> Self {
        Self::unchecked(self.parts.clone())
    }
}

impl fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HopfAlgebra").field("name", &self.parts.name).field("dim", &self.dim()).finish()
    }
}

impl PartialEq for HopfAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl HopfAlgebra {
    /// Validates every axiom on all basis tuples.
    pub fn new(parts: HopfParts) -> Result<Self, HopfError> {
        check_shapes(&parts)?;
        let h = Self::unchecked(parts);
        if let Some(bad) = h.check_axioms().into_iter().find(|o| !o.pass()) {
            return Err(HopfError::Axiom { family: bad.family, witness: bad.witness.unwrap() });
        }
        Ok(h)
    }

    /// Runs the axiom families on raw structure constants without rejecting them.
    pub fn check_parts(parts: HopfParts) -> Result<Vec<AxiomOutcome>, HopfError> {
        check_shapes(&parts)?;
        Ok(Self::unchecked(parts).check_axioms())
    }

    fn unchecked(parts: HopfParts) -> Self {
        Self { parts, iterated: Mutex::new(BTreeMap::new()), ad_matrices: OnceLock::new() }
    }

    pub fn parts(&self) -> &HopfParts {
        &self.parts
    }

    pub fn name(&self) -> &str {
        &self.parts.name
    }

    pub fn field(&self) -> &Field {
        &self.parts.field
    }

    pub fn dim(&self) -> usize {
        self.parts.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.parts.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.parts.labels.iter().position(|l| l == label)
    }

    pub fn unit_vec(&self) -> &SparseVec {
        &self.parts.unit
    }

    pub fn counit_vec(&self) -> &[Scalar] {
        &self.parts.counit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.parts.product[i][j]
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        mul_with(&self.parts, a, b)
    }

    pub fn counit_of(&self, a: &SparseVec) -> Scalar {
        a.iter().fold(Scalar::zero(), |acc, (i, c)| acc + c * &self.parts.counit[*i])
    }

    pub fn coproduct_basis(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.parts.coproduct[i]
    }

    pub fn antipode_of(&self, a: &SparseVec) -> SparseVec {
        a.iter().fold(SparseVec::new(), |acc, (i, c)| acc.add_scaled(c, &self.parts.antipode[*i]))
    }

    /// `ad(h) g` for elements.
    pub fn ad_vec(&self, h: &SparseVec, g: &SparseVec) -> SparseVec {
        let mats = self.ad_matrices();
        h.iter().fold(SparseVec::new(), |acc, (i, c)| acc.add_scaled(c, &mats[*i].apply(g)))
    }

    /// Matrices of `ad(e_i)` acting on `H`, columns indexed by the argument.
    pub fn ad_matrices(&self) -> &[Matrix] {
        self.ad_matrices.get_or_init(|| {
            (0..self.dim())
                .map(|i| {
                    let cols: Vec<SparseVec> = (0..self.dim()).map(|j| to_vec(&self.ad(&i, &j))).collect();
                    Matrix::from_columns(self.dim(), &cols)
                })
                .collect()
        })
    }

    /// `Delta^(k)` of a basis element as an order-`k` tensor; `k = 1` is the element itself.
    pub fn iterated_coproduct(&self, i: usize, k: usize) -> Result<Arc<Tensor>, HopfError> {
        if k == 0 {
            return Err(HopfError::InvalidParameter("iterated coproduct arity must be at least 1".into()));
        }
        if let Some(t) = self.iterated.lock().unwrap().get(&(i, k)) {
            return Ok(t.clone());
        }
        let t = if k == 1 {
            let mut t = Tensor { order: 1, ..Default::default() };
            t.add_term(vec![i], Scalar::one());
            t
        } else {
            // split the first factor of the (k-1)-fold tensor
            let prev = self.iterated_coproduct(i, k - 1)?;
            let mut t = Tensor { order: k, ..Default::default() };
            for (idx, c) in &prev.terms {
                for (a, b, x) in &self.parts.coproduct[idx[0]] {
                    let mut n = Vec::with_capacity(k);
                    n.push(*a);
                    n.push(*b);
                    n.extend_from_slice(&idx[1..]);
                    t.add_term(n, c * x);
                }
            }
            t
        };
        let t = Arc::new(t);
        self.iterated.lock().unwrap().entry((i, k)).or_insert_with(|| t.clone());
        Ok(t)
    }

    /// Runs all five axiom families; each reports the first failing basis tuple.
    pub fn check_axioms(&self) -> Vec<AxiomOutcome> {
        let p = &self.parts;
        let m = self.dim();
        let l = |i: usize| p.labels[i].clone();
        let mut out = Vec::new();

        let mut witness = None;
        'assoc: for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let left = mul_with(p, &p.product[i][j], &SparseVec::unit(k));
                    let right = mul_with(p, &SparseVec::unit(i), &p.product[j][k]);
                    if left != right {
                        witness = Some(format!("associativity ({}, {}, {})", l(i), l(j), l(k)));
                        break 'assoc;
                    }
                }
            }
        }
        if witness.is_none() {
            witness = (0..m)
                .find(|&i| {
                    let e = SparseVec::unit(i);
                    mul_with(p, &p.unit, &e) != e || mul_with(p, &e, &p.unit) != e
                })
                .map(|i| format!("unit ({})", l(i)));
        }
        out.push(AxiomOutcome { family: "algebra", witness });

        let witness = (0..m)
            .find_map(|i| {
                let delta = tensor2(&p.coproduct[i]);
                let mut left = Tensor { order: 3, ..Default::default() };
                let mut right = Tensor { order: 3, ..Default::default() };
                for (a, b, c) in &p.coproduct[i] {
                    for (x, y, z) in &p.coproduct[*a] {
                        left.add_term(vec![*x, *y, *b], c * z);
                    }
                    for (x, y, z) in &p.coproduct[*b] {
                        right.add_term(vec![*a, *x, *y], c * z);
                    }
                }
                if left != right {
                    return Some(format!("coassociativity ({})", l(i)));
                }
                let e = SparseVec::unit(i);
                let first = delta.iter().fold(SparseVec::new(), |acc, ((a, b), c)| {
                    acc.add_scaled(&(c * &p.counit[*a]), &SparseVec::unit(*b))
                });
                let second = delta.iter().fold(SparseVec::new(), |acc, ((a, b), c)| {
                    acc.add_scaled(&(c * &p.counit[*b]), &SparseVec::unit(*a))
                });
                (first != e || second != e).then(|| format!("counit ({})", l(i)))
            });
        out.push(AxiomOutcome { family: "coalgebra", witness });

        let coproduct_vec = |v: &SparseVec| {
            let mut acc = Lin::new();
            for (i, c) in v.iter() {
                for (a, b, x) in &p.coproduct[*i] {
                    lin_add(&mut acc, (*a, *b), c * x);
                }
            }
            acc
        };
        let mut witness = None;
        let unit_cop = coproduct_vec(&p.unit);
        let mut one_one = Lin::new();
        for (a, ca) in p.unit.iter() {
            for (b, cb) in p.unit.iter() {
                lin_add(&mut one_one, (*a, *b), ca * cb);
            }
        }
        if unit_cop != one_one {
            witness = Some("coproduct of the unit".to_string());
        }
        'hom: for i in 0..m {
            if witness.is_some() {
                break;
            }
            for j in 0..m {
                let left = coproduct_vec(&p.product[i][j]);
                let mut right = Lin::new();
                for (a, b, c) in &p.coproduct[i] {
                    for (x, y, z) in &p.coproduct[j] {
                        let cz = c * z;
                        for (u, cu) in p.product[*a][*x].iter() {
                            for (v, cv) in p.product[*b][*y].iter() {
                                lin_add(&mut right, (*u, *v), &cz * &(cu * cv));
                            }
                        }
                    }
                }
                if left != right {
                    witness = Some(format!("coproduct multiplicativity ({}, {})", l(i), l(j)));
                    break 'hom;
                }
            }
        }
        out.push(AxiomOutcome { family: "coproduct_hom", witness });

        let counit_vec = |v: &SparseVec| v.iter().fold(Scalar::zero(), |acc, (i, c)| acc + c * &p.counit[*i]);
        let mut witness = (!counit_vec(&p.unit).is_one()).then(|| "counit of the unit".to_string());
        if witness.is_none() {
            witness = (0..m)
                .flat_map(|i| (0..m).map(move |j| (i, j)))
                .find(|&(i, j)| counit_vec(&p.product[i][j]) != &p.counit[i] * &p.counit[j])
                .map(|(i, j)| format!("counit multiplicativity ({}, {})", l(i), l(j)));
        }
        out.push(AxiomOutcome { family: "counit_hom", witness });

        let witness = (0..m).find_map(|i| {
            let target = p.unit.scaled(&p.counit[i]);
            let mut left = SparseVec::new();
            let mut right = SparseVec::new();
            for (a, b, c) in &p.coproduct[i] {
                left = left.add_scaled(c, &mul_with(p, &p.antipode[*a], &SparseVec::unit(*b)));
                right = right.add_scaled(c, &mul_with(p, &SparseVec::unit(*a), &p.antipode[*b]));
            }
            (left != target || right != target).then(|| format!("antipode ({})", l(i)))
        });
        out.push(AxiomOutcome { family: "antipode", witness });
        out
    }
}

fn tensor2(terms: &[(usize, usize, Scalar)]) -> Lin<(usize, usize)> {
    let mut acc = Lin::new();
    for (a, b, c) in terms {
        lin_add(&mut acc, (*a, *b), c.clone());
    }
    acc
}

fn mul_with(p: &HopfParts, a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut acc = SparseVec::new();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            acc = acc.add_scaled(&(x * y), &p.product[*i][*j]);
        }
    }
    acc
}

fn check_shapes(p: &HopfParts) -> Result<(), HopfError> {
    let m = p.labels.len();
    if m == 0 {
        return Err(HopfError::Shape("empty basis".into()));
    }
    let bad = |what: &str| Err(HopfError::Shape(what.to_string()));
    if p.product.len() != m || p.product.iter().any(|r| r.len() != m) {
        return bad("product table must be dim x dim");
    }
    if p.coproduct.len() != m || p.counit.len() != m || p.antipode.len() != m {
        return bad("coproduct, counit and antipode need one entry per basis element");
    }
    let in_range = |v: &SparseVec| v.max_index().is_none_or(|i| i < m);
    if !in_range(&p.unit)
        || p.product.iter().flatten().any(|v| !in_range(v))
        || p.antipode.iter().any(|v| !in_range(v))
        || p.coproduct.iter().flatten().any(|(a, b, _)| *a >= m || *b >= m)
    {
        return bad("basis index out of range");
    }
    let scalars = p
        .product
        .iter()
        .flatten()
        .chain(p.antipode.iter())
        .chain(std::iter::once(&p.unit))
        .flat_map(|v| v.iter().map(|(_, c)| c))
        .chain(p.counit.iter())
        .chain(p.coproduct.iter().flatten().map(|(_, _, c)| c));
    for c in scalars {
        if !p.field.contains(c) {
            return Err(HopfError::Shape(format!("coefficient {c} is not in the field {}", p.field)));
        }
    }
    Ok(())
}

pub(crate) fn to_vec(l: &Lin<usize>) -> SparseVec {
    SparseVec::from_terms(l.iter().map(|(k, c)| (*k, c.clone())))
}

pub(crate) fn to_lin(v: &SparseVec) -> Lin<usize> {
    v.iter().map(|(k, c)| (*k, c.clone())).collect()
}

impl HopfStructure for HopfAlgebra {
    type Key = usize;

    fn unit(&self) -> Lin<usize> {
        to_lin(&self.parts.unit)
    }

    fn counit(&self, k: &usize) -> Scalar {
        self.parts.counit[*k].clone()
    }

    fn coproduct(&self, k: &usize) -> Vec<(usize, usize, Scalar)> {
        self.parts.coproduct[*k].clone()
    }

    fn antipode(&self, k: &usize) -> Lin<usize> {
        to_lin(&self.parts.antipode[*k])
    }

    fn product(&self, a: &usize, b: &usize) -> Lin<usize> {
        to_lin(&self.parts.product[*a][*b])
    }

    fn label(&self, k: &usize) -> String {
        self.parts.labels[*k].clone()
    }
}
