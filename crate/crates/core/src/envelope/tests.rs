use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::classical::lie_catalog;
use crate::exactla::{Matrix, Scalar, SparseVec};
use crate::operation::{all_pass, verify_axioms, Check};

fn failing(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| !c.pass).map(|c| format!("{} {:?}: {:?}", c.name, c.degree, c.witness)).collect()
}

fn omega(name: &str, cutoff: usize) -> Arc<Omega> {
    Arc::new(Omega::new(Arc::new(algebra_fixture(name).unwrap()), cutoff).unwrap())
}

fn sl2_on_m2(cutoff: usize) -> EnvelopeOperation {
    action_fixture("m2-sl2", cutoff).unwrap()
}

#[test]
fn every_action_fixture_builds() {
    for name in ACTION_FIXTURE_NAMES {
        let op = action_fixture(name, 2).unwrap();
        assert!(all_pass(&op.lie_checks()), "{name}");
    }
    assert!(matches!(action_fixture("m2-gl2", 2), Err(EnvelopeError::UnknownFixture(_))));
    assert_eq!(action_fixture("m2-sl2", 0).err(), Some(EnvelopeError::CutoffTooSmall(0)));
}

#[test]
fn unit_becomes_the_first_basis_vector() {
    let m2 = algebra_fixture("m2").unwrap();
    assert_eq!(m2.labels(), ["1", "E12", "E21", "E22"]);
    assert_eq!(m2.mul_basis(0, 2), &SparseVec::unit(2));
    // E12 E21 = E11 = 1 - E22
    assert_eq!(m2.mul_basis(1, 2), &SparseVec::from_terms([(0, Scalar::one()), (3, Scalar::from(-1))]));
    assert!(!m2.is_commutative());
    assert!(algebra_fixture("qz2").unwrap().is_commutative());
    assert_eq!(algebra_fixture("upper2").unwrap().labels(), ["1", "E12", "E22"]);
    assert!(matches!(algebra_fixture("m3"), Err(EnvelopeError::UnknownFixture(_))));
}

#[test]
fn invalid_algebras_are_rejected() {
    let t = vec![vec![SparseVec::unit(0), SparseVec::unit(1)], vec![SparseVec::unit(1), SparseVec::unit(1)]];
    // e_1 e_1 = e_1 but the unit is claimed to be e_1
    assert!(matches!(AssocAlgebra::new("bad", &["a", "b"], t, SparseVec::unit(1)), Err(EnvelopeError::NoUnit(_))));
    let t = vec![vec![SparseVec::unit(0)]];
    assert!(matches!(AssocAlgebra::new("bad", &["a", "b"], t, SparseVec::unit(0)), Err(EnvelopeError::Shape(_))));
}

#[test]
fn envelope_dimensions_and_axioms() {
    for (name, n) in [("m2", 4usize), ("qz2", 2), ("upper2", 3)] {
        let om = omega(name, 3);
        let dims: Vec<usize> = (0..4).map(|k| n * (n - 1).pow(k as u32)).collect();
        assert_eq!(om.dga().dims(), dims.as_slice(), "{name}");
        assert!(om.dga().d(0).apply(&SparseVec::unit(0)).is_zero());
        let checks = om.dga().check();
        assert!(all_pass(&checks), "{name}: {:?}", failing(&checks));
    }
    assert_eq!(Omega::new(Arc::new(algebra_fixture("m2").unwrap()), 0).unwrap_err(), EnvelopeError::CutoffTooSmall(0));
}

#[test]
fn product_rewrites_da_b() {
    let om = omega("m2", 2);
    let dga = om.dga();
    for a in 0..4 {
        for b in 0..4 {
            let (ua, ub) = (SparseVec::unit(a), SparseVec::unit(b));
            let lhs = dga.mul(1, &dga.d(0).apply(&ua), 0, &ub).add(&dga.mul(0, &ua, 1, &dga.d(0).apply(&ub)));
            let ab = om.algebra().mul(&ua, &ub);
            assert_eq!(lhs, dga.d(0).apply(&ab));
        }
    }
}

#[test]
fn zero_action_gives_zero_operators() {
    let om = omega("qz2", 3);
    let lie = Arc::new(lie_catalog("abelian(1)").unwrap());
    let op = EnvelopeOperation::lift(om.clone(), lie, vec![Matrix::zeros(2, 2)]).unwrap();
    for n in 0..=3 {
        assert!(op.operation().l(&vec![0], n).is_zero());
        assert!(op.operation().i(&vec![0], n).is_zero());
    }
}

#[test]
fn lifted_operation_satisfies_the_lie_axioms() {
    let op = sl2_on_m2(3);
    let checks = op.lie_checks();
    assert!(all_pass(&checks), "{:?}", failing(&checks));
    assert!(checks.iter().any(|c| c.name == "axop" && c.degree == Some(3)));
    let axioms = verify_axioms(op.operation());
    assert!(all_pass(&axioms), "{:?}", failing(&axioms));
}

#[test]
fn lie_derivative_of_a_one_form() {
    let op = sl2_on_m2(2);
    let om = op.omega();
    let dga = om.dga();
    let rho = &op.rho()[0];
    for a0 in 0..4 {
        for a1 in 1..4 {
            let form = SparseVec::unit(om.basis_index(a0, &[a1]));
            let lhs = op.operation().l(&vec![0], 1).apply(&form);
            let da1 = dga.d(0).apply(&SparseVec::unit(a1));
            let rhs = dga
                .mul(0, &rho.column(a0), 1, &da1)
                .add(&dga.mul(0, &SparseVec::unit(a0), 1, &dga.d(0).apply(&rho.column(a1))));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn non_derivations_and_bracket_mismatches_are_rejected() {
    let om = omega("m2", 2);
    let lie = Arc::new(lie_catalog("abelian(1)").unwrap());
    let err = EnvelopeOperation::lift(om.clone(), lie, vec![Matrix::identity(4)]).err().unwrap();
    assert!(matches!(err, EnvelopeError::NotDerivation(_)));
    // e and f swapped breaks [h, e] = 2e
    let one = Scalar::one();
    let swapped = [SparseVec::unit(2), SparseVec::from_terms([(0, one.clone()), (3, -one)]), SparseVec::unit(1)];
    let err = EnvelopeOperation::inner(om, Arc::new(lie_catalog("sl2").unwrap()), &swapped).err().unwrap();
    assert!(matches!(err, EnvelopeError::BracketMismatch(..)));
}

#[test]
fn extension_to_the_enveloping_algebra() {
    let op = sl2_on_m2(3);
    let ext = op.extend_to_u(3);
    assert_eq!(ext.keys().len(), 20);
    for x in 0..3 {
        for n in 1..=3 {
            assert_eq!(ext.i(&vec![x], n), op.operation().i(&vec![x], n));
        }
    }
    let checks = verify_axioms(&ext);
    assert!(all_pass(&checks), "{:?}", failing(&checks));
    assert!(checks.iter().any(|c| c.name == "Cr"));
}

#[test]
fn extension_is_not_graded_commutative() {
    let op = sl2_on_m2(2);
    let ext = op.extend_to_u(2);
    let a = op.omega().algebra();
    // X = e, f = E22, g = E21: L_e(g) L_e(f) = (E11 - E22) E12 = E12
    let f = a.to_internal(&SparseVec::unit(3));
    let g = a.to_internal(&SparseVec::unit(2));
    let report = op.obstruction(&ext, 0, &f, &g);
    assert!(report.holds, "{report:?}");
    assert!(report.witness_nonzero);
    assert_eq!(report.witness, a.to_internal(&SparseVec::unit(1)));
    // L_e(E12) = 0: both sides reduce to [f, L_(e^2)(g)]
    let f = a.to_internal(&SparseVec::unit(1));
    let report = op.obstruction(&ext, 0, &f, &g);
    assert!(report.holds && !report.witness_nonzero);
    let l2g = op.rho()[0].apply(&op.rho()[0].apply(&g));
    assert_eq!(report.rhs, a.commutator(&f, &l2g));
}

#[test]
fn abelian_action_has_vanishing_witness() {
    let om = omega("upper2", 2);
    let lie = Arc::new(lie_catalog("abelian(1)").unwrap());
    let op = EnvelopeOperation::inner(om, lie, &[SparseVec::unit(1)]).unwrap();
    let ext = op.extend_to_u(2);
    assert!(op.rho()[0].mul(&op.rho()[0]).is_zero());
    for f in 0..3 {
        for g in 0..3 {
            let report = op.obstruction(&ext, 0, &SparseVec::unit(f), &SparseVec::unit(g));
            assert!(report.holds && !report.witness_nonzero);
        }
    }
}

#[test]
fn derivation_calculus_is_a_quotient() {
    let op = sl2_on_m2(3);
    let calc = DerivationCalculus::new(&op);
    assert_eq!(calc.dga().dims(), &[4, 12, 12, 4]);
    let checks = calc.quotient_checks(&op);
    assert!(all_pass(&checks), "{:?}", failing(&checks));
    let aff = EnvelopeOperation::inner(omega("upper2", 2), Arc::new(lie_catalog("aff2").unwrap()), &[SparseVec::unit(0), SparseVec::unit(1)])
        .unwrap();
    let calc = DerivationCalculus::new(&aff);
    let checks = calc.quotient_checks(&aff);
    assert!(checks.iter().filter(|c| c.name != "eOp_onto").all(|c| c.pass), "{:?}", failing(&checks));
}

proptest! {
    #[test]
    fn basis_change_round_trips(v in prop::collection::vec(-5i64..5, 4)) {
        let m2 = algebra_fixture("m2").unwrap();
        let v = SparseVec::from_terms(v.iter().enumerate().map(|(k, &c)| (k, Scalar::from(c))));
        prop_assert_eq!(m2.from_internal(&m2.to_internal(&v)), v);
    }

    #[test]
    fn right_multiplication_is_an_action(idx in 0usize..36, a in 0usize..4, b in 0usize..4) {
        let om = omega("m2", 2);
        let w = SparseVec::unit(idx);
        let (ua, ub) = (SparseVec::unit(a), SparseVec::unit(b));
        let lhs = om.right_mul(2, &om.right_mul(2, &w, &ua), &ub);
        let rhs = om.right_mul(2, &w, &om.algebra().mul(&ua, &ub));
        prop_assert_eq!(lhs, rhs);
    }
}
