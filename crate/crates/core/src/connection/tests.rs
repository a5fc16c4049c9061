use proptest::prelude::*;

use super::*;
use crate::exactla::kernel_basis;
use crate::hopf::catalog;
use crate::operation::all_pass;

fn cforms(name: &str, cutoff: usize) -> Arc<CForms> {
    Arc::new(CForms::new(Arc::new(catalog(name).unwrap()), cutoff))
}

/// Dimension of `{c in H : ad(h) c = eps(h) c for all h}`, from the adjoint action directly.
fn ad_invariant_dim(h: &HopfAlgebra) -> usize {
    let m = h.dim();
    let mut rows = Vec::new();
    for k in 0..m {
        let cols: Vec<SparseVec> = (0..m)
            .map(|c| {
                let image = h.ad_vec(&SparseVec::unit(k), &SparseVec::unit(c));
                image.add_scaled(&-h.counit_vec()[k].clone(), &SparseVec::unit(c))
            })
            .collect();
        rows.push(Matrix::from_columns(m, &cols));
    }
    kernel_basis(&Matrix::vstack(m, &rows)).len()
}

fn failing<'a>(report: &'a [Check], name: &str) -> Option<&'a Check> {
    report.iter().find(|c| c.name == name && !c.pass)
}

#[test]
fn canonical_flat_connection_on_sweedler() {
    let c = cforms("sweedler4", 3);
    let op = c.operation(Differential::Hochschild);
    let conn = Connection::canonical_flat(c.clone());
    let report = verify_connection(&conn, &op);
    assert!(all_pass(&report), "{:?}", report.iter().find(|r| !r.pass));
    for name in ["GCo2_i", "GCo2_L", "normF", "GF2_i", "GF2_L", "dequiF", "Fder", "Bianchi"] {
        assert!(report.iter().any(|r| r.name == name), "{name} missing");
    }
    for n in 0..3 {
        assert!(conn.curvature_matrix(&op, n).unwrap().is_zero());
        assert_eq!(conn.extension_matrix(&op, n).unwrap(), Matrix::identity(c.dim(n)));
    }
    assert!(conn.curvature_element(&op).unwrap().is_zero());
    assert!(conn.shifted_curvature_element(&op).unwrap().is_zero());
}

#[test]
fn extension_is_multiplicative() {
    let c = cforms("sweedler4", 2);
    let op = c.operation(Differential::Hochschild);
    let space = solve_connection_space(&op, c.clone()).unwrap().unwrap();
    let conn = space.particular.perturbed(&space.kernel[0]);
    let scalar = c.form(0, SparseVec::single(0, Scalar::ratio(3, 2)));
    assert_eq!(conn.extend(&op, &scalar).unwrap(), SparseVec::single(0, Scalar::ratio(3, 2)));
    for i in 0..4 {
        for j in 0..4 {
            let lhs = conn.extend(&op, &c.basis_form(&[i, j])).unwrap();
            let rhs = c.mul(1, conn.matrix().row(i), 1, conn.matrix().row(j));
            assert_eq!(lhs, rhs);
        }
    }
    assert!(conn.extend(&op, &c.form(3, SparseVec::new())).is_err());
}

#[test]
fn solver_reproduces_the_identity() {
    for name in ["sweedler4", "z2"] {
        let c = cforms(name, 2);
        let op = c.operation(Differential::Hochschild);
        let space = solve_connection_space(&op, c.clone()).unwrap().expect("connections exist");
        assert!(space.contains(&Matrix::identity(c.hopf().dim())), "{name}");
        assert_eq!(space.affine_dim(), ad_invariant_dim(c.hopf()), "{name}");
        let again = solve_connection_space(&op, c.clone()).unwrap().unwrap();
        assert_eq!(again.particular.matrix(), space.particular.matrix());
        assert_eq!(again.kernel, space.kernel);
    }
    assert_eq!(ad_invariant_dim(&catalog("z2").unwrap()), 2);
}

#[test]
fn kernel_elements_satisfy_homogeneous_constraints() {
    let c = cforms("sweedler4", 2);
    let op = c.operation(Differential::Hochschild);
    let space = solve_connection_space(&op, c.clone()).unwrap().unwrap();
    let h = c.hopf();
    for a in &space.kernel {
        for k in op.keys() {
            for j in 0..h.dim() {
                assert!(op.i(k, 1).apply(a.row(j)).is_zero());
                let lhs = op.l(k, 1).apply(a.row(j));
                let rhs = h.ad_matrices()[*k]
                    .row(j)
                    .iter()
                    .fold(SparseVec::new(), |acc, (p, x)| acc.add_scaled(x, a.row(*p)));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn no_connection_without_contraction() {
    let c = cforms("sweedler4", 2);
    let op = c.operation(Differential::Hochschild).with_zeroed_contraction(2);
    assert!(solve_connection_space(&op, c).unwrap().is_none());
}

#[test]
fn solver_connections_verify_and_satisfy_bianchi() {
    let c = cforms("sweedler4", 3);
    let op = c.operation(Differential::Hochschild);
    let space = solve_connection_space(&op, c.clone()).unwrap().unwrap();
    let mut candidates = vec![space.particular.clone()];
    candidates.extend(space.kernel.iter().map(|k| space.particular.perturbed(&k.scaled(&Scalar::from(2)))));
    for conn in candidates {
        assert!(all_pass(&verify_connection(&conn, &op)));
        let shifted = conn.shifted_curvature_element(&op).unwrap();
        assert!(conn.bianchi_defect(&op, &shifted).unwrap().is_zero());
    }
}

#[test]
fn weil_connection_has_generator_curvature() {
    let w = Arc::new(WeilAlgebra::new(Arc::new(catalog("z2").unwrap()), 4).unwrap());
    let op = w.operation();
    let conn = Connection::weil(&w);
    let report = verify_connection(&conn, &op);
    assert!(all_pass(&report), "{:?}", report.iter().find(|r| !r.pass));
    let phi = conn.curvature_matrix(&op, 1).unwrap();
    for j in 0..2 {
        let f = SparseVec::unit(w.index_of(&[crate::weil::Letter::f(j)]));
        assert_eq!(phi.column(j), f);
    }
}

#[test]
fn element_curvature_matches_the_map() {
    let w = Arc::new(WeilAlgebra::new(Arc::new(catalog("z2").unwrap()), 4).unwrap());
    let op = w.operation();
    let conn = Connection::weil(&w);
    let h = w.hopf().clone();
    let dga = op.dga();
    let f = conn.curvature_element(&op).unwrap();
    let phi1 = conn.curvature_matrix(&op, 1).unwrap();
    assert_eq!(f.to_map(dga.dim(2)), phi1.transpose());
    // d(A - eps) + (A - eps)^2 differs from F by 1 (x) phi(eps)
    let phi_eps = phi1.apply(&w.cforms().counit_form());
    assert!(!phi_eps.is_zero());
    let correction = HTensor::scalar_part(&h, 2, &phi_eps);
    let shifted = conn.shifted_curvature_element(&op).unwrap();
    assert_eq!(shifted, f.sub(&correction));
    assert!(conn.bianchi_defect(&op, &shifted).unwrap().is_zero());
    let a = conn.element();
    let commutator = a.mul(&h, dga, &correction).sub(&correction.mul(&h, dga, &a));
    assert_eq!(conn.bianchi_defect(&op, &f).unwrap(), commutator);
}

#[test]
fn planted_defect_breaks_equivariance() {
    let c = cforms("sweedler4", 2);
    let op = c.operation(Differential::Hochschild);
    let x = c.hopf().index_of("x").unwrap();
    let eps = c.counit_form();
    let mut rows = vec![SparseVec::new(); 4];
    rows[x] = eps;
    let bad = Connection::canonical_flat(c.clone()).perturbed(&Matrix::from_rows(4, rows));
    let report = verify_connection(&bad, &op);
    // contraction of products involves L, so only the generator level stays intact
    assert!(report.iter().any(|r| r.name == "GCo2_i" && r.degree == Some(1) && r.pass));
    let l = failing(&report, "GCo2_L").expect("equivariance should fail");
    assert!(l.witness.as_deref().is_some_and(|w| w.contains("psi(x)")), "{:?}", l.witness);
}

#[test]
fn shape_and_cutoff_errors() {
    let c = cforms("z2", 2);
    assert!(Connection::new(c.clone(), Matrix::identity(3)).is_err());
    let op = c.operation(Differential::Hochschild);
    let conn = Connection::canonical_flat(c);
    assert!(matches!(conn.curvature_matrix(&op, 2), Err(ConnectionError::Cutoff { degree: 3, cutoff: 2 })));
}

proptest! {
    #[test]
    fn hom_and_tensor_round_trip(entries in prop::collection::vec((0..4usize, 0..6usize, -5i64..5), 0..12)) {
        let map = Matrix::from_rows(6, (0..4).map(|j| SparseVec::from_terms(
            entries.iter().filter(|e| e.0 == j).map(|e| (e.1, Scalar::from(e.2))))).collect());
        let t = HTensor::from_map(1, &map);
        prop_assert_eq!(t.to_map(6), map);
        prop_assert_eq!(HTensor::from_map(1, &t.to_map(6)), t);
    }
}
