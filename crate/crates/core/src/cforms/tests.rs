use super::*;
use crate::exactla::{kernel_basis, rank};
use crate::hopf::catalog;
use crate::operation::{all_pass, check_superalgebra_relations, cohomology, verify_axioms, CohomologyVariant};

fn cforms(name: &str, cutoff: usize) -> Arc<CForms> {
    Arc::new(CForms::new(Arc::new(catalog(name).unwrap()), cutoff))
}

fn all_tuples(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| (0..m).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

/// Contraction evaluated pointwise from the alternating formula.
fn contraction_oracle(c: &CForms, k: usize, psi: &MultilinearForm) -> Vec<Scalar> {
    let h = c.hopf();
    let n = psi.degree;
    let m = h.dim();
    let unit = h.unit_vec().clone();
    all_tuples(m, n - 1)
        .into_iter()
        .map(|g| {
            let mut total = Scalar::zero();
            for p in 0..n {
                let delta = h.iterated_coproduct(k, n - p).unwrap();
                for (ks, coeff) in &delta.terms {
                    let mut args: Vec<SparseVec> = g[..p].iter().map(|&i| SparseVec::unit(i)).collect();
                    args.push(SparseVec::unit(ks[0]).add_scaled(&-h.counit_vec()[ks[0]].clone(), &unit));
                    for (s, &gi) in g[p..].iter().enumerate() {
                        args.push(h.ad_vec(&SparseVec::unit(ks[s + 1]), &SparseVec::unit(gi)));
                    }
                    let v = coeff * &c.evaluate_on(psi, &args);
                    total = if p % 2 == 0 { total + v } else { total - v };
                }
            }
            total
        })
        .collect()
}

fn lie_oracle(c: &CForms, k: usize, psi: &MultilinearForm) -> Vec<Scalar> {
    let h = c.hopf();
    let n = psi.degree;
    all_tuples(h.dim(), n)
        .into_iter()
        .map(|g| {
            let delta = h.iterated_coproduct(k, n).unwrap();
            delta.terms.iter().fold(Scalar::zero(), |acc, (ks, coeff)| {
                let args: Vec<SparseVec> =
                    ks.iter().zip(&g).map(|(&a, &b)| h.ad_vec(&SparseVec::unit(a), &SparseVec::unit(b))).collect();
                acc + coeff * &c.evaluate_on(psi, &args)
            })
        })
        .collect()
}

#[test]
fn products_are_pointwise() {
    let c = cforms("sweedler4", 2);
    for i in 0..4 {
        for j in 0..4 {
            let f = c.form_product(&c.basis_form(&[i]), &c.basis_form(&[j])).unwrap();
            for a in 0..4 {
                for b in 0..4 {
                    let expected = Scalar::from(i64::from(i == a && j == b));
                    assert_eq!(c.evaluate(&f, &[a, b]), expected);
                }
            }
        }
    }
    let phi = c.form(1, SparseVec::from_terms([(0, Scalar::from(2)), (2, Scalar::from(-1))]));
    let chi = c.form(1, SparseVec::from_terms([(1, Scalar::ratio(1, 3)), (3, Scalar::from(5))]));
    let prod = c.form_product(&phi, &chi).unwrap();
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(c.evaluate(&prod, &[a, b]), c.evaluate(&phi, &[a]) * c.evaluate(&chi, &[b]));
        }
    }
    let one = c.form(0, SparseVec::unit(0));
    assert_eq!(c.form_product(&one, &phi).unwrap(), phi);
}

#[test]
fn differentials_on_low_degrees() {
    for name in ["sweedler4", "z3"] {
        let c = cforms(name, 3);
        let h = c.hopf().clone();
        let m = h.dim();
        let scalar = c.form(0, SparseVec::unit(0));
        assert!(c.d0(&scalar).coeffs.is_zero());
        assert!(c.d_hochschild(&scalar).coeffs.is_zero());
        for i in 0..m {
            let psi = c.basis_form(&[i]);
            let d0 = c.d0(&psi);
            let d = c.d_hochschild(&psi);
            for a in 0..m {
                for b in 0..m {
                    let ab = h.mul_basis(a, b).get(i);
                    assert_eq!(c.evaluate(&d0, &[a, b]), -ab.clone());
                    let eps = h.counit_vec();
                    let expected = &eps[a] * &Scalar::from(i64::from(b == i)) - ab
                        + Scalar::from(i64::from(a == i)) * eps[b].clone();
                    assert_eq!(c.evaluate(&d, &[a, b]), expected);
                }
            }
            assert!(c.d0(&d0).coeffs.is_zero(), "{name}");
            assert!(c.d_hochschild(&d).coeffs.is_zero(), "{name}");
        }
    }
}

#[test]
fn squares_vanish_through_degree_three() {
    for name in ["z2", "sweedler4"] {
        let c = cforms(name, 4);
        for n in 0..=3 {
            assert_eq!(c.d_squared_witness(Differential::D0, n), None);
            assert_eq!(c.d_squared_witness(Differential::Hochschild, n), None);
        }
    }
}

#[test]
fn d0_rank_and_invariant_kernel_on_sweedler() {
    let c = cforms("sweedler4", 2);
    // independent oracle: d0 psi_i = -sum mu^i_ab psi_a psi_b, a 16 x 4 block of structure constants
    let h = c.hopf();
    let mut dense = vec![vec![Scalar::zero(); 4]; 16];
    for a in 0..4 {
        for b in 0..4 {
            for (i, x) in h.mul_basis(a, b).iter() {
                dense[a * 4 + b][*i] = -x.clone();
            }
        }
    }
    assert_eq!(Matrix::from_dense(&dense), c.d_matrix(Differential::D0, 1));
    assert_eq!(rank(&c.d_matrix(Differential::D0, 1)), 4);
    let g = 1;
    let eps_minus_l = Matrix::identity(4).sub(&c.lie_matrix(g, 1));
    let kernel = kernel_basis(&eps_minus_l);
    assert_eq!(kernel, vec![SparseVec::unit(0), SparseVec::unit(1)]);
}

#[test]
fn contraction_low_degree_cases() {
    let c = cforms("sweedler4", 3);
    let h = c.hopf().clone();
    let eps = h.counit_vec();
    for k in 0..4 {
        let i1 = c.contraction_matrix(k, 1);
        for j in 0..4 {
            // psi_j(e_k) - eps(e_k) psi_j(1)
            let expected = Scalar::from(i64::from(j == k)) - &eps[k] * &h.unit_vec().get(j);
            assert_eq!(i1.get(0, j), expected);
        }
    }
    for n in 1..=3 {
        assert!(c.contraction_matrix(0, n).is_zero());
    }
    // i_x(psi_g psi_x) = psi_x o ad(x) - psi_g = 2 psi_g - psi_g
    let (g, x) = (1, 2);
    let out = c.contract_i(&SparseVec::unit(x), &c.basis_form(&[g, x]));
    assert_eq!(out, c.basis_form(&[g]));
    assert_eq!(c.contract_i(&SparseVec::unit(x), &c.form(0, SparseVec::unit(0))).coeffs, SparseVec::new());
}

#[test]
fn matrices_match_pointwise_formulas() {
    for name in ["sweedler4", "z3"] {
        let c = cforms(name, 3);
        let m = c.hopf().dim();
        for n in 1..=3 {
            for idx in 0..c.dim(n) {
                let psi = c.form(n, SparseVec::unit(idx));
                for k in 0..m {
                    let i = c.contraction_matrix(k, n).column(idx);
                    assert_eq!(i.to_dense(c.dim(n - 1)), contraction_oracle(&c, k, &psi), "{name} i {k} {idx}");
                    let l = c.lie_matrix(k, n).column(idx);
                    assert_eq!(l.to_dense(c.dim(n)), lie_oracle(&c, k, &psi), "{name} L {k} {idx}");
                }
            }
        }
    }
}

#[test]
fn lie_derivative_examples() {
    let c = cforms("sweedler4", 3);
    for n in 0..=3 {
        assert_eq!(c.lie_matrix(0, n), Matrix::identity(c.dim(n)));
    }
    let x_dual = c.basis_form(&[2]);
    assert_eq!(c.lie_l(&SparseVec::unit(1), &x_dual).coeffs, x_dual.coeffs.neg());
    let z = cforms("z3", 3);
    for k in 0..3 {
        for n in 0..=3 {
            assert_eq!(z.lie_matrix(k, n), Matrix::identity(z.dim(n)));
        }
    }
}

#[test]
fn operation_axioms_and_dd0() {
    for name in ["sweedler4", "z3"] {
        let c = cforms(name, 2);
        let op = c.operation(Differential::Hochschild);
        let report = verify_axioms(&op);
        assert!(all_pass(&report), "{name}: {:?}", report.iter().find(|r| !r.pass));
        assert!(all_pass(&check_superalgebra_relations(&op)));
        let op0 = c.operation(Differential::D0);
        assert!(all_pass(&verify_axioms(&op0)));
        assert!(all_pass(&c.dd0_checks()));
        for k in 0..c.hopf().dim() {
            for n in 1..2 {
                let d = |w, n| c.d_matrix(w, n);
                let ik = |n| c.contraction_matrix(k, n);
                let lhs = ik(n + 1).mul(&d(Differential::Hochschild, n)).add(&d(Differential::Hochschild, n - 1).mul(&ik(n)));
                let rhs = ik(n + 1).mul(&d(Differential::D0, n)).add(&d(Differential::D0, n - 1).mul(&ik(n)));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn zeroed_contraction_is_caught() {
    let c = cforms("sweedler4", 2);
    let op = c.operation(Differential::Hochschild).with_zeroed_contraction(2);
    let report = verify_axioms(&op);
    for name in ["antid", "Cr"] {
        let bad = report.iter().find(|r| r.name == name && !r.pass);
        assert!(bad.is_some_and(|r| r.witness.is_some()), "{name} should fail");
    }
}

#[test]
fn d0_cohomology_vanishes() {
    let c = cforms("sweedler4", 3);
    let op = c.operation(Differential::D0);
    assert_eq!(cohomology(&op, CohomologyVariant::Full, 0).unwrap().dim, 1);
    for n in 1..=2 {
        assert_eq!(cohomology(&op, CohomologyVariant::Full, n).unwrap().dim, 0);
        assert_eq!(cohomology(&op, CohomologyVariant::Invariant, n).unwrap().dim, 0);
    }
    assert!(cohomology(&op, CohomologyVariant::Full, 3).is_err());
}
