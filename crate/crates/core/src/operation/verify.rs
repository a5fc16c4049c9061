use crate::exactla::{Matrix, Scalar, SparseVec};
use crate::hopf::HopfStructure;

use super::{sign, Check, HOperation};

fn witness_for<H: HopfStructure>(
    op: &HOperation<H>,
    lhs: &Matrix,
    rhs: &Matrix,
    n: usize,
    ctx: impl FnOnce() -> String,
) -> Option<String> {
    lhs.first_difference(rhs).map(|(_, col)| format!("{} on {}", ctx(), op.dga().label(n, col)))
}

/// One check per degree, failing with the witness `f` returns.
fn per_degree(
    name: &str,
    degrees: impl Iterator<Item = usize>,
    mut f: impl FnMut(usize) -> Option<String>,
) -> Vec<Check> {
    degrees.map(|n| Check::new(name, Some(n), f(n))).collect()
}

fn check_nor<H: HopfStructure>(op: &HOperation<H>, name: &str) -> Vec<Check> {
    let unit = op.hopf().unit();
    per_degree(name, 1..=op.cutoff(), |n| {
        let m = op.i_lin(&unit, n);
        let z = Matrix::zeros(m.rows(), m.cols());
        witness_for(op, &m, &z, n, || "i_1".to_string())
    })
}

fn check_unit_lie<H: HopfStructure>(op: &HOperation<H>, name: &str) -> Vec<Check> {
    let unit = op.hopf().unit();
    per_degree(name, 0..=op.cutoff(), |n| {
        witness_for(op, &op.l_lin(&unit, n), &op.dga().identity(n), n, || "L_1".to_string())
    })
}

/// `d i_h + i_h d = L_h - eps(h) I` on degrees below the cutoff.
fn check_def_lie<H: HopfStructure>(op: &HOperation<H>, name: &str) -> Vec<Check> {
    let dga = op.dga();
    per_degree(name, 0..op.cutoff(), |n| {
        op.keys().iter().find_map(|h| {
            let mut lhs = op.i(h, n + 1).mul(dga.d(n));
            if n > 0 {
                lhs = lhs.add(&dga.d(n - 1).mul(&op.i(h, n)));
            }
            witness_for(op, &lhs, &op.l_minus_counit(h, n), n, || format!("h={}", op.label(h)))
        })
    })
}

/// `i_g L_h = sum L_{h1} i_{ad(h2) g}`.
fn check_cr<H: HopfStructure>(op: &HOperation<H>, name: &str) -> Vec<Check> {
    let hopf = op.hopf();
    per_degree(name, 1..=op.cutoff(), |n| {
        for h in op.keys() {
            let cop = hopf.coproduct(h);
            for g in op.keys() {
                let lhs = op.i(g, n).mul(&op.l(h, n));
                let mut rhs = Matrix::zeros(lhs.rows(), lhs.cols());
                for (h1, h2, c) in &cop {
                    let ad = hopf.ad(h2, g);
                    if ad.is_empty() {
                        continue;
                    }
                    rhs = rhs.add_scaled(c, &op.l(h1, n - 1).mul(&op.i_lin(&ad, n)));
                }
                if let Some(w) = witness_for(op, &lhs, &rhs, n, || format!("h={}, g={}", op.label(h), op.label(g))) {
                    return Some(w);
                }
            }
        }
        None
    })
}

/// `L_h L_g = L_{hg}`.
fn check_alghom<H: HopfStructure>(op: &HOperation<H>, name: &str) -> Vec<Check> {
    let hopf = op.hopf();
    per_degree(name, 0..=op.cutoff(), |n| {
        for h in op.keys() {
            for g in op.keys() {
                let lhs = op.l(h, n).mul(&op.l(g, n));
                let rhs = op.l_lin(&hopf.product(h, g), n);
                if let Some(w) = witness_for(op, &lhs, &rhs, n, || format!("h={}, g={}", op.label(h), op.label(g))) {
                    return Some(w);
                }
            }
        }
        None
    })
}

/// `L_h d = d L_h`.
fn check_cld<H: HopfStructure>(op: &HOperation<H>, name: &str) -> Vec<Check> {
    let dga = op.dga();
    per_degree(name, 0..op.cutoff(), |n| {
        op.keys().iter().find_map(|h| {
            let lhs = op.l(h, n + 1).mul(dga.d(n));
            let rhs = dga.d(n).mul(&op.l(h, n));
            witness_for(op, &lhs, &rhs, n, || format!("h={}", op.label(h)))
        })
    })
}

fn check_gl1<H: HopfStructure>(op: &HOperation<H>, name: &str) -> Vec<Check> {
    let unit = op.dga().unit();
    let w = op.keys().iter().find_map(|h| {
        let lhs = op.l(h, 0).apply(unit);
        let rhs = unit.scaled(&op.hopf().counit(h));
        (lhs != rhs).then(|| format!("h={}", op.label(h)))
    });
    vec![Check::new(name, Some(0), w)]
}

/// Conjugation identities: `sum L_{S(h1)} X_g L_{h2} = X_{ad(h) g}` for `X = i` or `X = L`.
fn check_equivariance<H: HopfStructure>(op: &HOperation<H>, name: &str, contraction: bool) -> Vec<Check> {
    let hopf = op.hopf();
    let start = usize::from(contraction);
    per_degree(name, start..=op.cutoff(), |n| {
        let out_deg = n - start;
        for h in op.keys() {
            let cop = hopf.coproduct(h);
            for g in op.keys() {
                let mid = if contraction { op.i(g, n) } else { op.l(g, n) };
                let mut lhs = Matrix::zeros(mid.rows(), mid.cols());
                for (h1, h2, c) in &cop {
                    let s = hopf.antipode(h1);
                    lhs = lhs.add_scaled(c, &op.l_lin(&s, out_deg).mul(&mid).mul(&op.l(h2, n)));
                }
                let ad = hopf.ad(h, g);
                let rhs = if contraction { op.i_lin(&ad, n) } else { op.l_lin(&ad, n) };
                if let Some(w) = witness_for(op, &lhs, &rhs, n, || format!("h={}, g={}", op.label(h), op.label(g))) {
                    return Some(w);
                }
            }
        }
        None
    })
}

/// `i_h(ab) = sum i_{h1}(a) L_{h2}(b) + (-1)^|a| a i_h(b)`, on basis pairs of total degree `t`.
fn check_antid<H: HopfStructure>(op: &HOperation<H>, name: &str) -> Vec<Check> {
    let dga = op.dga();
    let hopf = op.hopf();
    per_degree(name, 1..=op.cutoff(), |t| {
        for h in op.keys() {
            let cop = hopf.coproduct(h);
            let ih_t = op.i(h, t);
            for a in 0..=t {
                let b = t - a;
                let ih_b = op.i(h, b).columns();
                let parts: Vec<(Vec<SparseVec>, Vec<SparseVec>, Scalar)> = if a == 0 {
                    Vec::new()
                } else {
                    cop.iter().map(|(h1, h2, c)| (op.i(h1, a).columns(), op.l(h2, b).columns(), c.clone())).collect()
                };
                let sgn = sign(a);
                for i in 0..dga.dim(a) {
                    let ei = SparseVec::unit(i);
                    for j in 0..dga.dim(b) {
                        let lhs = ih_t.apply(dga.product_basis(a, i, b, j));
                        let mut rhs = SparseVec::new();
                        for (ia, lb, c) in &parts {
                            rhs = rhs.add_scaled(c, &dga.mul(a - 1, &ia[i], b, &lb[j]));
                        }
                        if b > 0 {
                            rhs = rhs.add_scaled(&sgn, &dga.mul(a, &ei, b - 1, &ih_b[j]));
                        }
                        if lhs != rhs {
                            return Some(format!(
                                "h={} on ({}, {})",
                                op.label(h),
                                dga.label(a, i),
                                dga.label(b, j)
                            ));
                        }
                    }
                }
            }
        }
        None
    })
}

/// `L_h(ab) = sum L_{h1}(a) L_{h2}(b)`.
fn check_cohom<H: HopfStructure>(op: &HOperation<H>, name: &str) -> Vec<Check> {
    let dga = op.dga();
    let hopf = op.hopf();
    per_degree(name, 0..=op.cutoff(), |t| {
        for h in op.keys() {
            let cop = hopf.coproduct(h);
            let lh_t = op.l(h, t);
            for a in 0..=t {
                let b = t - a;
                let parts: Vec<_> =
                    cop.iter().map(|(h1, h2, c)| (op.l(h1, a).columns(), op.l(h2, b).columns(), c.clone())).collect();
                for i in 0..dga.dim(a) {
                    for j in 0..dga.dim(b) {
                        let lhs = lh_t.apply(dga.product_basis(a, i, b, j));
                        let mut rhs = SparseVec::new();
                        for (la, lb, c) in &parts {
                            rhs = rhs.add_scaled(c, &dga.mul(a, &la[i], b, &lb[j]));
                        }
                        if lhs != rhs {
                            return Some(format!(
                                "h={} on ({}, {})",
                                op.label(h),
                                dga.label(a, i),
                                dga.label(b, j)
                            ));
                        }
                    }
                }
            }
        }
        None
    })
}

/// Checks every operation axiom and its standard consequences on basis elements
/// up to the cutoff, together with the differential-algebra axioms.
pub fn verify_axioms<H: HopfStructure>(op: &HOperation<H>) -> Vec<Check> {
    let mut out = op.dga().check();
    out.extend(check_nor(op, "nor"));
    out.extend(check_def_lie(op, "defLie"));
    out.extend(check_antid(op, "antid"));
    out.extend(check_cr(op, "Cr"));
    out.extend(check_alghom(op, "alghom"));
    out.extend(check_gl1(op, "gL1"));
    out.extend(check_unit_lie(op, "gLun"));
    out.extend(check_cohom(op, "cohom"));
    out.extend(check_cld(op, "cLd"));
    out.extend(check_equivariance(op, "equiI", true));
    out.extend(check_equivariance(op, "equiL", false));
    out
}

/// The relations of the graded Hopf algebra generated by `delta`, `Lambda_h`, `y_h`,
/// read as operator identities through `delta -> d`, `Lambda_h -> L_h`, `y_h -> i_h`,
/// together with the module-algebra conditions coming from their coproducts.
pub fn check_superalgebra_relations<H: HopfStructure>(op: &HOperation<H>) -> Vec<Check> {
    let dga = op.dga();
    let mut out = Vec::new();
    for n in 0..op.cutoff().saturating_sub(1) {
        let dd = dga.d(n + 1).mul(dga.d(n));
        let w = witness_for(op, &dd, &Matrix::zeros(dd.rows(), dd.cols()), n, || "delta^2".to_string());
        out.push(Check::new("delta_squared", Some(n), w));
    }
    out.extend(check_cld(op, "delta_lambda"));
    out.extend(check_nor(op, "y_unit"));
    out.extend(check_cr(op, "y_lambda"));
    out.extend(check_def_lie(op, "delta_y"));
    out.extend(check_alghom(op, "lambda_action"));
    out.extend(check_unit_lie(op, "lambda_unit"));
    out.extend(dga.check().into_iter().filter(|c| c.name == "dga_leibniz").map(|mut c| {
        c.name = "coproduct_delta".into();
        c
    }));
    out.extend(check_cohom(op, "coproduct_lambda"));
    out.extend(check_antid(op, "coproduct_y"));
    out
}
