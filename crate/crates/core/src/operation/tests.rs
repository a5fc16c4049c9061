use std::sync::Arc;

use super::*;
use crate::cforms::{CForms, Differential};
use crate::hopf::{catalog, HopfAlgebra};

fn op(name: &str, cutoff: usize, which: Differential) -> HOperation<HopfAlgebra> {
    Arc::new(CForms::new(Arc::new(catalog(name).unwrap()), cutoff)).operation(which)
}

fn failing(checks: &[Check]) -> Vec<&Check> {
    checks.iter().filter(|c| !c.pass).collect()
}

#[test]
fn filtration_matches_iterated_contractions() {
    for name in ["z3", "sweedler4"] {
        let o = op(name, 3, Differential::Hochschild);
        for n in 0..=3 {
            for p in 0..=3 {
                let fast = filtration(&o, p, n).unwrap();
                let slow = filtration_brute_force(&o, p, n).unwrap();
                assert!(fast.contains_space(&slow) && slow.contains_space(&fast), "{name} F^{p} in degree {n}");
            }
        }
        assert!(filtration(&o, 0, 4).is_err());
    }
}

#[test]
fn subspace_closure_and_filtration_properties() {
    let o = op("sweedler4", 2, Differential::Hochschild);
    let checks = closure_checks(&o).unwrap();
    assert!(all_pass(&checks), "{:?}", failing(&checks));
    let checks = filtration_checks(&o);
    assert!(all_pass(&checks), "{:?}", failing(&checks));
}

#[test]
fn first_pages_see_the_basic_complex() {
    let o = op("sweedler4", 3, Differential::Hochschild);
    let e0 = spectral_terms(&o, 0).unwrap();
    for n in 0..3 {
        let total: usize = (0..=n).map(|p| e0.get(p, n - p).unwrap()).sum();
        assert_eq!(total, o.dga().dim(n));
    }
    let e1 = spectral_terms(&o, 1).unwrap();
    let e2 = spectral_terms(&o, 2).unwrap();
    for p in 0..3 {
        assert_eq!(e1.get(p, 0).unwrap(), basics(&o, p).unwrap().dim(), "E1 p={p}");
        assert_eq!(e2.get(p, 0).unwrap(), cohomology(&o, CohomologyVariant::Basic, p).unwrap().dim, "E2 p={p}");
    }
    assert!(e1.get(3, 0).is_none());
    assert!(spectral_terms(&o, 3).is_err());
}

#[test]
fn invariant_cohomology_in_degree_zero() {
    let o = op("z2", 2, Differential::D0);
    for variant in [CohomologyVariant::Full, CohomologyVariant::Invariant, CohomologyVariant::Basic] {
        let h0 = cohomology(&o, variant, 0).unwrap();
        assert_eq!(h0.dim, 1, "{variant:?}");
        assert_eq!(h0.representatives.len(), 1);
    }
    assert_eq!(horizontals(&o, 0).unwrap().dim(), 1);
    assert!(invariants(&o, 3).is_err());
}

#[test]
fn broken_operations_are_reported() {
    let o = op("sweedler4", 2, Differential::Hochschild).with_zeroed_contraction(1);
    let checks = verify_axioms(&o);
    let bad = failing(&checks);
    assert!(!bad.is_empty());
    assert!(bad.iter().all(|c| c.witness.is_some()));
}
