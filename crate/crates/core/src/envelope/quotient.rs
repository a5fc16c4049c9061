//! The derivation-based calculus `A (x) Lambda g*` as a quotient of `Omega(A)`.

use crate::classical::ClassicalOperation;
use crate::exactla::{rank, Matrix, SparseVec};
use crate::operation::{Check, GradedDga};

use super::operation::EnvelopeOperation;

/// `A (x) Lambda g*` with `d(a) = sum_k rho_k(a) theta^k` and the Koszul differential,
/// together with the canonical map from `Omega(A)`.
pub struct DerivationCalculus {
    dga: GradedDga,
    i: Vec<Vec<Matrix>>,
    projection: Vec<Matrix>,
}

impl DerivationCalculus {
    pub fn new(op: &EnvelopeOperation) -> Self {
        let cutoff = op.omega().cutoff();
        let lie = op.lie().clone();
        let koszul = ClassicalOperation::koszul(lie.clone(), cutoff);
        let ext = koszul.operation().dga();
        let a = op.omega().algebra().clone();
        let na = a.dim();
        let dims: Vec<usize> = (0..=cutoff).map(|n| na * ext.dim(n)).collect();
        let split = |n: usize, idx: usize| (idx / ext.dim(n), idx % ext.dim(n));
        let mul = |p: usize, u: &SparseVec, q: usize, v: &SparseVec| {
            let mut out = SparseVec::new();
            for (x, c) in u.iter() {
                let (ai, ei) = split(p, *x);
                for (y, e) in v.iter() {
                    let (aj, ej) = split(q, *y);
                    let form = ext.mul(p, &SparseVec::unit(ei), q, &SparseVec::unit(ej));
                    for (k, s) in a.mul_basis(ai, aj).iter() {
                        let term = form.map_indices(|f| k * ext.dim(p + q) + f);
                        out = out.add_scaled(&(&(c * e) * s), &term);
                    }
                }
            }
            out
        };
        let theta = |k: usize| koszul.algebra().odd_generator(k);
        let d = (0..cutoff)
            .map(|n| {
                let cols: Vec<SparseVec> = (0..dims[n])
                    .map(|idx| {
                        let (ai, ei) = split(n, idx);
                        let mut out = ext.d(n).apply(&SparseVec::unit(ei)).map_indices(|f| ai * ext.dim(n + 1) + f);
                        for (k, r) in op.rho().iter().enumerate() {
                            let lifted = r.column(ai).iter().fold(SparseVec::new(), |acc, (b, c)| {
                                acc.add_scaled(c, &theta(k).map_indices(|f| b * ext.dim(1) + f))
                            });
                            out = out.add(&mul(1, &lifted, n, &SparseVec::unit(ei)));
                        }
                        out
                    })
                    .collect();
                Matrix::from_columns(dims[n + 1], &cols)
            })
            .collect();
        let labels = (0..=cutoff)
            .map(|n| (0..dims[n]).map(|idx| {
                let (ai, ei) = split(n, idx);
                format!("{} {}", a.labels()[ai], ext.label(n, ei))
            }).collect())
            .collect();
        let dga = GradedDga::new(format!("{} (x) Lambda {}*", a.name(), lie.name()), dims.clone(), d, SparseVec::unit(0), labels, |p, i, q, j| {
            mul(p, &SparseVec::unit(i), q, &SparseVec::unit(j))
        });
        let i = (0..lie.dim())
            .map(|x| {
                (0..=cutoff)
                    .map(|n| {
                        if n == 0 {
                            return Matrix::zeros(0, dims[0]);
                        }
                        let ix = koszul.i(x, n);
                        let cols: Vec<SparseVec> = (0..dims[n])
                            .map(|idx| {
                                let (ai, ei) = split(n, idx);
                                ix.column(ei).map_indices(|f| ai * ext.dim(n - 1) + f)
                            })
                            .collect();
                        Matrix::from_columns(dims[n - 1], &cols)
                    })
                    .collect()
            })
            .collect();
        // a_0 da_1 ... da_n -> a_0 pi(da_1) ... pi(da_n)
        let one_forms: Vec<SparseVec> = (0..na).map(|b| dga.d(0).apply(&SparseVec::unit(b))).collect();
        let omega = op.omega();
        let projection = (0..=cutoff)
            .map(|n| {
                let cols: Vec<SparseVec> = (0..omega.dga().dim(n))
                    .map(|idx| {
                        let (a0, slots) = omega.decode(n, idx);
                        slots.iter().enumerate().fold(SparseVec::unit(a0), |acc, (t, &s)| dga.mul(t, &acc, 1, &one_forms[s]))
                    })
                    .collect();
                Matrix::from_columns(dims[n], &cols)
            })
            .collect();
        Self { dga, i, projection }
    }

    pub fn dga(&self) -> &GradedDga {
        &self.dga
    }

    pub fn projection(&self, n: usize) -> &Matrix {
        &self.projection[n]
    }

    /// The canonical map is onto and intertwines `d`, products and every `i_X`.
    pub fn quotient_checks(&self, op: &EnvelopeOperation) -> Vec<Check> {
        let src = op.omega().dga();
        let cutoff = src.cutoff();
        let mut out = self.dga.check();
        for n in 0..=cutoff {
            let onto = rank(&self.projection[n]) == self.dga.dim(n);
            out.push(Check::from_bool("eOp_onto", Some(n), onto, || format!("rank below {}", self.dga.dim(n))));
            if n < cutoff {
                let lhs = self.projection[n + 1].mul(src.d(n));
                let rhs = self.dga.d(n).mul(&self.projection[n]);
                out.push(Check::from_bool("eOp_d", Some(n), lhs == rhs, || src.label(n, lhs.first_difference(&rhs).unwrap().1).to_string()));
            }
            if n > 0 {
                let bad = (0..op.lie().dim()).find(|&x| {
                    self.projection[n - 1].mul(&op.operation().i(&vec![x], n)) != self.i[x][n].mul(&self.projection[n])
                });
                out.push(Check::new("eOp_i", Some(n), bad.map(|x| format!("X={}", op.lie().labels()[x]))));
            }
        }
        let mut mul_bad = None;
        'outer: for p in 0..=cutoff {
            for q in 0..=cutoff - p {
                for i in 0..src.dim(p) {
                    for j in 0..src.dim(q) {
                        let lhs = self.projection[p + q].apply(src.product_basis(p, i, q, j));
                        let rhs = self.dga.mul(p, &self.projection[p].column(i), q, &self.projection[q].column(j));
                        if lhs != rhs {
                            mul_bad = Some(format!("{} * {}", src.label(p, i), src.label(q, j)));
                            break 'outer;
                        }
                    }
                }
            }
        }
        out.push(Check::new("eOp_mul", None, mul_bad));
        out
    }
}
