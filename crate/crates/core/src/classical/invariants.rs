use serde::Serialize;

use crate::exactla::{kernel_basis, solve_affine, Matrix, SparseVec};
use crate::operation::invariants;

use super::gc::{multisets, Monomial};
use super::lie::LieAlgebra;
use super::ops::{ClassicalKind, ClassicalOperation};
use super::ClassicalError;

/// A basis of `I^k(g)`, coordinates over the monomials of `S^k g*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantPolynomials {
    pub degree: usize,
    pub monomials: Vec<Vec<usize>>,
    pub basis: Vec<SparseVec>,
}

/// The coadjoint action of `X_a` on `S^k g*`, extended from linear forms as a derivation.
fn coadjoint_on_polynomials(lie: &LieAlgebra, a: usize, monomials: &[Vec<usize>]) -> Matrix {
    let n = lie.dim();
    let index = |m: &[usize]| monomials.binary_search_by(|x| x.as_slice().cmp(m)).expect("monomial in basis");
    let cols: Vec<SparseVec> = monomials
        .iter()
        .map(|m| {
            let mut terms = Vec::new();
            for t in 0..m.len() {
                // theta^k -> -sum_j c^k_aj theta^j
                for j in 0..n {
                    let c = lie.constant(a, j, m[t]);
                    if c.is_zero() {
                        continue;
                    }
                    let mut replaced = m.clone();
                    replaced[t] = j;
                    replaced.sort_unstable();
                    terms.push((index(&replaced), -c));
                }
            }
            SparseVec::from_terms(terms)
        })
        .collect();
    Matrix::from_columns(monomials.len(), &cols)
}

/// `I^k(g)`: common kernel of the coadjoint action on `S^k g*`.
pub fn invariant_polynomials(lie: &LieAlgebra, k: usize) -> InvariantPolynomials {
    let monomials = multisets(lie.dim(), k);
    let blocks: Vec<Matrix> = (0..lie.dim()).map(|a| coadjoint_on_polynomials(lie, a, &monomials)).collect();
    let stacked = Matrix::vstack(monomials.len(), &blocks);
    InvariantPolynomials { degree: k, basis: kernel_basis(&stacked), monomials }
}

/// `gamma(P)` computed twice from two solutions of `dQ = 1 (x) P` in `W_I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanImage {
    pub degree: usize,
    /// Coordinates in the monomial basis of `Lambda^degree g*`.
    pub form: SparseVec,
    pub second_solution: SparseVec,
    pub consistent: bool,
}

/// The Cartan map on a polynomial `P` of degree `k`, given over the monomials of `S^k g*`.
pub fn cartan_map(w: &ClassicalOperation, k: usize, p: &SparseVec) -> Result<CartanImage, ClassicalError> {
    if w.kind() != ClassicalKind::Weil {
        return Err(ClassicalError::NotWeil);
    }
    if k == 0 {
        return Err(ClassicalError::NotInvariant("constants have no transgression".into()));
    }
    w.check_degree(2 * k)?;
    let alg = w.algebra();
    let monomials = multisets(w.lie().dim(), k);
    let target = SparseVec::from_terms(p.iter().map(|(i, c)| {
        let m = Monomial { odd: Vec::new(), even: monomials[*i].clone() };
        (alg.index_of(&m).expect("polynomial monomial in W"), c.clone())
    }));
    for x in 0..w.lie().dim() {
        if !w.l(x, 2 * k).apply(&target).is_zero() {
            return Err(ClassicalError::NotInvariant(format!("L_{} does not annihilate it", w.lie().labels()[x])));
        }
    }
    let op = w.operation();
    let wi = invariants(op, 2 * k - 1).map_err(|e| ClassicalError::Operation(e.to_string()))?;
    let basis = Matrix::from_columns(alg.dim(2 * k - 1), wi.basis());
    let a = op.dga().d(2 * k - 1).mul(&basis);
    let (x, kernel) = solve_affine(&a, &target).ok_or(ClassicalError::NoTransgression)?;
    let shifted = kernel.iter().fold(x.clone(), |acc, v| acc.add(v));
    let q1 = basis.apply(&x);
    let q2 = basis.apply(&shifted);
    let form = w.rho(2 * k - 1, &q1);
    let second_solution = w.rho(2 * k - 1, &q2);
    let consistent = form == second_solution;
    Ok(CartanImage { degree: 2 * k - 1, form, second_solution, consistent })
}
