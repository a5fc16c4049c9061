//! One function per subcommand; each fills a report and returns module errors.

use std::sync::Arc;

use hopfweil_core::cforms::{CForms, Differential};
use hopfweil_core::classical::{
    cartan_map, check_all_shuffles, check_classical_connection, check_lext_u, check_propbari, invariant_polynomials,
    BarConvention, ClassicalOperation,
};
use hopfweil_core::connection::{solve_connection_space, verify_connection, Connection};
use hopfweil_core::definition::Definition;
use hopfweil_core::envelope::{action_fixture, algebra_fixture, DerivationCalculus, EnvelopeError};
use hopfweil_core::exactla::{rank, SparseVec};
use hopfweil_core::hopf::{catalog, HopfAlgebra, CATALOG_NAMES};
use hopfweil_core::operation::{
    basics, check_superalgebra_relations, cohomology, spectral_terms, verify_axioms, Check, CohomologyVariant, HOperation,
};
use hopfweil_core::weil::{bimodule_model_dims, default_cutoff, free_word_dims, WeilAlgebra};

use crate::input::{self, guard, power_dims, CliError};
use crate::report::{Report, Table};
use crate::{
    BarArg, CartanArgs, CatalogArgs, ClassicalWeilArgs, ConnectionArgs, CformsCohomologyArgs, DifferentialArg, EnvelopeArgs,
    HopfInput, KoszulArgs, Model, OperationArgs, SpectralArgs, WeilArgs,
};

type Outcome = Result<(), CliError>;

fn differential(d: DifferentialArg) -> Differential {
    match d {
        DifferentialArg::D0 => Differential::D0,
        DifferentialArg::Hochschild => Differential::Hochschild,
    }
}

/// `c1*label1 + c2*label2`, or `0`.
fn render(v: &SparseVec, labels: impl Fn(usize) -> String) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter().map(|(k, c)| format!("{c}*{}", labels(*k))).collect::<Vec<_>>().join(" + ")
}

fn dims_table(dims: &[usize]) -> Table {
    let mut t = Table::new("dims", &["degree", "dim"]);
    for (n, d) in dims.iter().enumerate() {
        t.push([n, *d]);
    }
    t
}

fn axiom_checks(prefix: &str, outcomes: Vec<hopfweil_core::hopf::AxiomOutcome>) -> Vec<Check> {
    outcomes
        .into_iter()
        .map(|o| Check::new(if prefix.is_empty() { o.family.to_string() } else { format!("{prefix}:{}", o.family) }, None, o.witness))
        .collect()
}

pub fn hopf_check(a: &HopfInput, r: &mut Report) -> Outcome {
    let mut t = Table::new("algebras", &["name", "dim", "field", "pass"]);
    if a.catalog.is_none() && a.file.is_none() {
        for name in CATALOG_NAMES {
            let h = catalog(name)?;
            let checks = axiom_checks(name, h.check_axioms());
            t.push([name.to_string(), h.dim().to_string(), h.field().to_string(), checks.iter().all(|c| c.pass).to_string()]);
            r.checks(checks);
        }
    } else {
        let parts = input::hopf_parts(a)?;
        let (name, dim, field) = (parts.name.clone(), parts.labels.len(), parts.field.to_string());
        let checks = axiom_checks("", HopfAlgebra::check_parts(parts)?);
        t.push([name, dim.to_string(), field, checks.iter().all(|c| c.pass).to_string()]);
        r.checks(checks);
    }
    r.table(t);
    Ok(())
}

pub fn catalog_definition(name: &str) -> Result<String, CliError> {
    Ok(Definition::from_hopf(&catalog(name)?).serialize())
}

pub fn hopf_catalog(a: &CatalogArgs, r: &mut Report) -> Outcome {
    let h = catalog(&a.name)?;
    r.checks(axiom_checks("", h.check_axioms()));
    let mut basis = Table::new("basis", &["index", "label", "counit"]);
    for (i, l) in h.labels().iter().enumerate() {
        basis.push([i.to_string(), l.clone(), h.counit_vec()[i].to_string()]);
    }
    r.table(basis);
    let mut def = Table::new("definition", &["line"]);
    for line in Definition::from_hopf(&h).serialize().lines() {
        def.push([line]);
    }
    r.table(def);
    Ok(())
}

pub fn cforms_cohomology(a: &CformsCohomologyArgs, r: &mut Report) -> Outcome {
    let h = input::hopf(&a.input)?;
    let n = a.max_degree;
    if n == 0 {
        return Err(CliError::Input("--max-degree must be at least 1".into()));
    }
    guard("C(H)", &power_dims(h.dim(), n))?;
    let which = differential(a.differential);
    let c = Arc::new(CForms::new(h, n));
    for k in 0..=n {
        let w = c.d_squared_witness(which, k);
        r.check("d_squared", Some(k), w.is_none(), || w.unwrap());
    }
    let op = c.operation(which);
    let mut t = Table::new("cohomology", &["degree", "dim", "full", "invariant", "basic"]);
    for k in 0..n {
        let dims = [CohomologyVariant::Full, CohomologyVariant::Invariant, CohomologyVariant::Basic]
            .map(|v| cohomology(&op, v, k).map(|c| c.dim));
        let [f, i, b] = dims;
        t.push([k, c.dim(k), f?, i?, b?]);
    }
    r.table(t);
    Ok(())
}

/// The operation of `H` on `C(H)` or `W(H)`, after the dimension guard.
fn build_operation(h: Arc<HopfAlgebra>, model: Model, d: DifferentialArg, cutoff: usize) -> Result<HOperation<HopfAlgebra>, CliError> {
    match model {
        Model::Cforms => {
            guard("C(H)", &power_dims(h.dim(), cutoff))?;
            Ok(Arc::new(CForms::new(h, cutoff)).operation(differential(d)))
        }
        Model::Weil => {
            guard("W(H)", &free_word_dims(h.dim(), cutoff))?;
            Ok(Arc::new(WeilAlgebra::new(h, cutoff)?).operation())
        }
    }
}

/// Default degree cutoff for whole-complex computations on either model.
fn model_cutoff(h: &HopfAlgebra, model: Model, cutoff: Option<usize>) -> usize {
    cutoff.unwrap_or_else(|| match model {
        Model::Cforms => 4,
        Model::Weil => default_cutoff(h),
    })
}

pub fn operation_verify(a: &OperationArgs, r: &mut Report) -> Outcome {
    let h = input::hopf(&a.input)?;
    let cutoff = model_cutoff(&h, a.model, a.cutoff);
    let mut op = build_operation(h.clone(), a.model, a.differential, cutoff)?;
    if let Some(label) = &a.zero_contraction {
        let k = h.index_of(label).ok_or_else(|| CliError::Input(format!("no basis element labelled `{label}`")))?;
        op = op.with_zeroed_contraction(k);
    }
    r.checks(verify_axioms(&op));
    r.checks(check_superalgebra_relations(&op));
    if a.model == Model::Cforms {
        r.checks(CForms::new(h, cutoff).dd0_checks());
    }
    r.table(dims_table(op.dga().dims()));
    Ok(())
}

pub fn operation_spectral(a: &SpectralArgs, r: &mut Report) -> Outcome {
    let h = input::hopf(&a.input)?;
    let cutoff = model_cutoff(&h, a.model, a.cutoff);
    let op = build_operation(h, a.model, DifferentialArg::Hochschild, cutoff)?;
    let table = spectral_terms(&op, a.r)?;
    let mut t = Table::new("spectral", &["p", "q", "dim"]);
    for ((p, q), d) in &table.dims {
        t.push([*p, *q, *d]);
    }
    r.table(t);
    // the bottom row against the basic complex, computed without the filtration
    match a.r {
        0 => {
            for n in 0..op.cutoff() {
                let total: usize = (0..=n).filter_map(|p| table.get(p, n - p)).sum();
                let dim = op.dga().dim(n);
                r.check("e0_total", Some(n), total == dim, || format!("sum {total}, dim {dim}"));
            }
        }
        1 => {
            for p in 0..op.cutoff() {
                let (e, b) = (table.get(p, 0).unwrap_or(0), basics(&op, p)?.dim());
                r.check("e1_basic", Some(p), e == b, || format!("E1 {e}, basic {b}"));
            }
        }
        _ => {
            for p in 0..op.cutoff() {
                let (e, b) = (table.get(p, 0).unwrap_or(0), cohomology(&op, CohomologyVariant::Basic, p)?.dim);
                r.check("e2_basic_cohomology", Some(p), e == b, || format!("E2 {e}, basic cohomology {b}"));
            }
        }
    }
    Ok(())
}

/// The target operation with its forms, and the distinguished connection into it.
fn connection_target(a: &ConnectionArgs) -> Result<(HOperation<HopfAlgebra>, Connection), CliError> {
    let h = input::hopf(&a.input)?;
    let cutoff = model_cutoff(&h, a.model, a.cutoff);
    match a.model {
        Model::Cforms => {
            guard("C(H)", &power_dims(h.dim(), cutoff))?;
            let c = Arc::new(CForms::new(h, cutoff));
            Ok((c.operation(Differential::Hochschild), Connection::canonical_flat(c)))
        }
        Model::Weil => {
            guard("W(H)", &free_word_dims(h.dim(), cutoff))?;
            let w = Arc::new(WeilAlgebra::new(h, cutoff)?);
            Ok((w.operation(), Connection::weil(&w)))
        }
    }
}

pub fn connection_solve(a: &ConnectionArgs, r: &mut Report) -> Outcome {
    let (op, known) = connection_target(a)?;
    let c = known.cforms().clone();
    let Some(space) = solve_connection_space(&op, c.clone())? else {
        r.check("connection_exists", None, false, || "the degree-1 constraints are inconsistent".into());
        return Ok(());
    };
    r.check("connection_exists", None, true, String::new);
    r.check("known_connection_in_space", None, space.contains(known.matrix()), || "not particular plus kernel".into());
    r.checks(verify_connection(&space.particular, &op));
    let mut t = Table::new("space", &["affine_dim", "forms", "target_dim"]);
    t.push([space.affine_dim(), c.dim(1), op.dga().dim(1)]);
    r.table(t);
    let mut t = Table::new("particular", &["form", "value"]);
    for j in 0..c.dim(1) {
        t.push([c.label(1, j), render(space.particular.matrix().row(j), |k| op.dga().label(1, k).to_string())]);
    }
    r.table(t);
    let mut t = Table::new("kernel", &["element", "form", "value"]);
    for (e, m) in space.kernel.iter().enumerate() {
        for j in 0..c.dim(1) {
            if !m.row(j).is_zero() {
                t.push([e.to_string(), c.label(1, j), render(m.row(j), |k| op.dga().label(1, k).to_string())]);
            }
        }
    }
    r.table(t);
    Ok(())
}

pub fn connection_verify(a: &ConnectionArgs, r: &mut Report) -> Outcome {
    let (op, conn) = connection_target(a)?;
    r.checks(verify_connection(&conn, &op));
    let flat = (0..op.cutoff().min(conn.cforms().cutoff())).all(|n| conn.curvature_matrix(&op, n).is_ok_and(|m| m.is_zero()));
    let mut t = Table::new("connection", &["model", "flat"]);
    t.push([format!("{:?}", a.model).to_lowercase(), flat.to_string()]);
    r.table(t);
    Ok(())
}

fn weil(a: &WeilArgs) -> Result<Arc<WeilAlgebra>, CliError> {
    let h = input::hopf(&a.input)?;
    let cutoff = a.cutoff.unwrap_or_else(|| default_cutoff(&h));
    guard("W(H)", &free_word_dims(h.dim(), cutoff))?;
    Ok(Arc::new(WeilAlgebra::new(h, cutoff)?))
}

pub fn weil_build(a: &WeilArgs, r: &mut Report) -> Outcome {
    let w = weil(a)?;
    let m = w.hopf().dim();
    let oracle = bimodule_model_dims(m, w.cutoff());
    let mut t = Table::new("dims", &["degree", "dim", "bimodule_count"]);
    for (n, d) in w.dims().iter().enumerate() {
        t.push([n, *d, oracle[n]]);
        r.check("dims_count", Some(n), *d == oracle[n], || format!("{d} words, bimodule count {}", oracle[n]));
    }
    r.table(t);
    let op = w.operation();
    r.checks(op.dga().check());
    r.checks(verify_axioms(&op));
    r.checks(w.homotopy_checks());
    r.checks(w.section_checks());
    Ok(())
}

pub fn weil_cohomology(a: &WeilArgs, r: &mut Report) -> Outcome {
    let w = weil(a)?;
    let op = w.operation();
    let mut t = Table::new("cohomology", &["degree", "dim", "full", "invariant", "basic"]);
    for n in 0..w.cutoff() {
        let full = cohomology(&op, CohomologyVariant::Full, n)?.dim;
        let inv = cohomology(&op, CohomologyVariant::Invariant, n)?.dim;
        let basic = cohomology(&op, CohomologyVariant::Basic, n)?.dim;
        let expected = usize::from(n == 0);
        r.check("full_trivial", Some(n), full == expected, || format!("dim {full}"));
        r.check("invariant_trivial", Some(n), inv == expected, || format!("dim {inv}"));
        t.push([n, w.dims()[n], full, inv, basic]);
    }
    r.table(t);
    Ok(())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Dimensions of `Lambda g* (x) S g*` with generators of degrees 1 and 2.
fn classical_weil_dims(n: usize, cutoff: usize) -> Vec<usize> {
    (0..=cutoff)
        .map(|k| (0..=k.min(n)).filter(|j| (k - j) % 2 == 0).map(|j| binomial(n, j).saturating_mul(binomial(n + (k - j) / 2 - 1, (k - j) / 2))).sum())
        .collect()
}

fn cohomology_table(op: &ClassicalOperation, r: &mut Report) -> Result<Vec<[usize; 3]>, CliError> {
    let mut t = Table::new("cohomology", &["degree", "dim", "full", "invariant", "basic"]);
    let mut out = Vec::new();
    for n in 0..op.cutoff() {
        let [f, i, b] = op.cohomology_dims(n)?;
        t.push([n, op.algebra().dim(n), f, i, b]);
        out.push([f, i, b]);
    }
    r.table(t);
    Ok(out)
}

pub fn classical_koszul(a: &KoszulArgs, r: &mut Report) -> Outcome {
    let lie = input::lie(&a.lie)?;
    let cutoff = a.cutoff.unwrap_or(lie.dim() + 1);
    guard("Lambda g*", &(0..=cutoff).map(|k| binomial(lie.dim(), k)).collect::<Vec<_>>())?;
    let op = ClassicalOperation::koszul(lie, cutoff);
    r.checks(op.lie_checks());
    if a.max_word > 0 {
        let conv = match a.bar {
            BarArg::Symmetrized => BarConvention::Symmetrized,
            BarArg::LeftIterated => BarConvention::LeftIterated,
        };
        r.checks(check_lext_u(&op, a.max_word));
        r.checks(check_all_shuffles(&op, a.max_word));
        r.checks(check_propbari(&op, conv, a.max_word)?);
    }
    cohomology_table(&op, r)?;
    Ok(())
}

pub fn classical_weil(a: &ClassicalWeilArgs, r: &mut Report) -> Outcome {
    let lie = input::lie(&a.lie)?;
    guard("W(g)", &classical_weil_dims(lie.dim(), a.cutoff))?;
    let op = ClassicalOperation::weil(lie.clone(), a.cutoff);
    r.checks(op.lie_checks());
    r.checks(op.basic_d_vanishes());
    r.checks(check_classical_connection(&op, op.connection())?);
    let coh = cohomology_table(&op, r)?;
    for (n, [full, _, _]) in coh.iter().enumerate().skip(1) {
        r.check("acyclic", Some(n), *full == 0, || format!("dim {full}"));
    }
    let mut t = Table::new("invariant_polynomials", &["k", "dim", "basic_dim"]);
    for k in 0..=(a.cutoff - 1) / 2 {
        let inv = invariant_polynomials(&lie, k).basis.len();
        let basic = basics(op.operation(), 2 * k)?.dim();
        r.check("basic_is_invariant_polynomials", Some(2 * k), inv == basic, || format!("I^{k} has dim {inv}, basic {basic}"));
        t.push([k, inv, basic]);
    }
    r.table(t);
    Ok(())
}

pub fn classical_cartan(a: &CartanArgs, r: &mut Report) -> Outcome {
    let lie = input::lie(&a.lie)?;
    let k = a.degree;
    if k == 0 {
        return Err(CliError::Input("--degree must be at least 1".into()));
    }
    guard("W(g)", &classical_weil_dims(lie.dim(), 2 * k))?;
    let w = ClassicalOperation::weil(lie.clone(), 2 * k);
    let koszul = ClassicalOperation::koszul(lie.clone(), 2 * k);
    let inv = invariant_polynomials(&lie, k);
    let mut t = Table::new("cartan", &["polynomial", "degree", "nonzero", "form"]);
    let mut polys = Table::new("polynomials", &["polynomial", "value"]);
    for (idx, p) in inv.basis.iter().enumerate() {
        let mono = |i: usize| inv.monomials[i].iter().map(|&j| format!("f[{}]", lie.labels()[j])).collect::<Vec<_>>().join("");
        polys.push([idx.to_string(), render(p, mono)]);
        let image = cartan_map(&w, k, p)?;
        let deg = image.degree;
        let label = |i: usize| koszul.algebra().label(deg, i);
        r.check("cartan_consistent", Some(deg), image.consistent, || render(&image.second_solution, label));
        r.check("cartan_nonzero", Some(deg), !image.form.is_zero(), String::new);
        let bad = (0..lie.dim()).find(|&x| !koszul.l(x, deg).apply(&image.form).is_zero());
        r.checks([Check::new("cartan_invariant", Some(deg), bad.map(|x| format!("L_{}", lie.labels()[x])))]);
        let closed = koszul.operation().dga().d(deg).apply(&image.form).is_zero();
        r.check("cartan_closed", Some(deg), closed, || "d of the image".into());
        t.push([idx.to_string(), deg.to_string(), (!image.form.is_zero()).to_string(), render(&image.form, label)]);
    }
    r.table(polys);
    r.table(t);
    Ok(())
}

pub fn envelope_check(a: &EnvelopeArgs, r: &mut Report) -> Outcome {
    let algebra = a.action.split('-').next().unwrap_or_default();
    let n = algebra_fixture(algebra).map_err(|_| EnvelopeError::UnknownFixture(a.action.clone()))?.dim();
    let dims: Vec<usize> = (0..=a.cutoff).map(|k| n.saturating_mul((n - 1).saturating_pow(k as u32))).collect();
    guard("Omega(A)", &dims)?;
    let op = action_fixture(&a.action, a.cutoff)?;
    r.table(dims_table(op.omega().dga().dims()));
    r.checks(op.omega().dga().check());
    r.checks(op.lie_checks());
    let ext = op.extend_to_u(a.max_word);
    r.checks(verify_axioms(&ext).into_iter().map(|mut c| {
        c.name = format!("U:{}", c.name);
        c
    }));
    let calc = DerivationCalculus::new(&op);
    // surjectivity depends on the action, so it is tabulated rather than checked
    let mut t = Table::new("quotient", &["degree", "rank", "dim", "onto"]);
    for k in 0..=a.cutoff {
        let (rk, d) = (rank(calc.projection(k)), calc.dga().dim(k));
        t.push([k.to_string(), rk.to_string(), d.to_string(), (rk == d).to_string()]);
    }
    r.table(t);
    r.checks(calc.quotient_checks(&op).into_iter().filter(|c| c.name != "eOp_onto"));
    if a.max_word >= 2 {
        let alg = op.omega().algebra();
        let labels = |i: usize| alg.labels()[i].clone();
        let mut summary = Table::new("obstruction", &["letter", "pairs", "nonzero_witnesses", "example_f", "example_g", "example_witness"]);
        for x in 0..op.lie().dim() {
            let mut bad = None;
            let mut nonzero = 0;
            let mut example: Option<(usize, usize, SparseVec)> = None;
            for f in 0..alg.dim() {
                for g in 0..alg.dim() {
                    let rep = op.obstruction(&ext, x, &SparseVec::unit(f), &SparseVec::unit(g));
                    if !rep.holds && bad.is_none() {
                        bad = Some(format!("f={}, g={}: {} vs {}", labels(f), labels(g), render(&rep.lhs, labels), render(&rep.rhs, labels)));
                    }
                    if rep.witness_nonzero {
                        nonzero += 1;
                        example.get_or_insert((f, g, rep.witness));
                    }
                }
            }
            let letter = op.lie().labels()[x].clone();
            r.checks([Check::new("obstruction_identity", None, bad.map(|b| format!("X={letter}, {b}")))]);
            let (ef, eg, ew) = match example {
                Some((f, g, w)) => (labels(f), labels(g), render(&w, labels)),
                None => (String::new(), String::new(), "0".into()),
            };
            summary.push([letter, (alg.dim() * alg.dim()).to_string(), nonzero.to_string(), ef, eg, ew]);
        }
        r.table(summary);
    }
    Ok(())
}
