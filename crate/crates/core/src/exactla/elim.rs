//! Row reduction to reduced echelon form.
//!
//! Rational input takes a fraction-free route: every row is scaled to a primitive integer
//! vector, eliminations are integer cross-multiplications followed by content division, and
//! only the final echelon rows are divided by their pivots. Other fields use plain
//! Gauss-Jordan with monic pivots.

use dashu_int::ops::Gcd;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use super::{Matrix, Scalar, SparseVec};

/// Reduced row echelon form: monic pivots, pivot columns otherwise zero, rows by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// One kernel vector per free column: that column set to one, pivots solved for.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut slot = vec![usize::MAX; self.cols];
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        for (k, &c) in free.iter().enumerate() {
            slot[c] = k;
        }
        let mut terms: Vec<Vec<(usize, Scalar)>> =
            free.iter().map(|&c| vec![(c, Scalar::one())]).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (c, v) in row.iter() {
                if *c != p {
                    terms[slot[*c]].push((p, -v));
                }
            }
        }
        terms.into_iter().map(SparseVec::from_terms).collect()
    }
}

type Row<E> = Vec<(usize, E)>;

trait Pivoting: Clone {
    fn zero(&self) -> bool;
    fn plus(a: Self, b: Self) -> Self;
    /// Clears the entry `at` of `row` sitting in the leading column of `pivot`.
    fn eliminate(row: &Row<Self>, pivot: &Row<Self>, at: &Self) -> Row<Self>;
    fn normalize(row: &mut Row<Self>);
}

impl Pivoting for IBig {
    fn zero(&self) -> bool {
        *self == IBig::ZERO
    }

    fn plus(a: Self, b: Self) -> Self {
        a + b
    }

    fn eliminate(row: &Row<Self>, pivot: &Row<Self>, at: &Self) -> Row<Self> {
        let lead = &pivot[0].1;
        let g = IBig::from(lead.gcd(at));
        let (a, b) = (lead / &g, at / &g);
        let mut out = merge(row, pivot, |x| &a * x, |y| -(&b * y));
        Self::normalize(&mut out);
        out
    }

    fn normalize(row: &mut Row<Self>) {
        let mut g = UBig::ZERO;
        for (_, x) in row.iter() {
            g = g.gcd(x);
            if g == UBig::ONE {
                break;
            }
        }
        let neg = row.first().is_some_and(|(_, x)| *x < IBig::ZERO);
        if g > UBig::ONE || neg {
            let g = if neg { -IBig::from(g) } else { IBig::from(g) };
            for (_, x) in row.iter_mut() {
                *x = &*x / &g;
            }
        }
    }
}

impl Pivoting for Scalar {
    fn zero(&self) -> bool {
        self.is_zero()
    }

    fn plus(a: Self, b: Self) -> Self {
        a + b
    }

    fn eliminate(row: &Row<Self>, pivot: &Row<Self>, at: &Self) -> Row<Self> {
        let c = -at;
        merge(row, pivot, |x| x.clone(), |y| &c * y)
    }

    fn normalize(row: &mut Row<Self>) {
        if let Some((_, lead)) = row.first() {
            if !lead.is_one() {
                let inv = lead.inverse().expect("nonzero pivot");
                for (_, x) in row.iter_mut() {
                    *x = &*x * &inv;
                }
            }
        }
    }
}

fn merge<E: Pivoting>(a: &Row<E>, b: &Row<E>, fa: impl Fn(&E) -> E, fb: impl Fn(&E) -> E) -> Row<E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ca < cb {
            i += 1;
            (ca, fa(&a[i - 1].1))
        } else if cb < ca {
            j += 1;
            (cb, fb(&b[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ca, E::plus(fa(&a[i - 1].1), fb(&b[j - 1].1)))
        };
        if !v.zero() {
            out.push((col, v));
        }
    }
    out
}

/// Reduces `row` against every pivot row it touches, except the one owning `skip`.
fn reduce<E: Pivoting>(mut row: Row<E>, owner: &[usize], echelon: &[Row<E>], skip: usize) -> Row<E> {
    let mut pos = 0;
    while pos < row.len() {
        let col = row[pos].0;
        let k = owner[col];
        if k != usize::MAX && col != skip {
            let at = row[pos].1.clone();
            row = E::eliminate(&row, &echelon[k], &at);
            // entries left of `col` are untouched, so `pos` now holds the next column
        } else {
            pos += 1;
        }
    }
    row
}

fn echelon<E: Pivoting>(rows: Vec<Row<E>>, cols: usize) -> (Vec<Row<E>>, Vec<usize>) {
    let mut owner = vec![usize::MAX; cols];
    let mut ech: Vec<Row<E>> = Vec::new();
    let mut pivots = Vec::new();
    for row in rows {
        let mut r = reduce(row, &owner, &ech, usize::MAX);
        if let Some(&(p, _)) = r.first() {
            E::normalize(&mut r);
            owner[p] = ech.len();
            pivots.push(p);
            ech.push(r);
        }
    }
    // back-substitution from the rightmost pivot leftwards
    let mut order: Vec<usize> = (0..ech.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(pivots[k]));
    let mut done_owner = vec![usize::MAX; cols];
    for &k in &order {
        let r = std::mem::take(&mut ech[k]);
        let mut r = reduce(r, &done_owner, &ech, pivots[k]);
        E::normalize(&mut r);
        ech[k] = r;
        done_owner[pivots[k]] = k;
    }
    order.reverse();
    let rows = order.iter().map(|&k| std::mem::take(&mut ech[k])).collect();
    let piv = order.iter().map(|&k| pivots[k]).collect();
    (rows, piv)
}

fn integer_row(row: &SparseVec) -> Row<IBig> {
    let mut lcm = UBig::ONE;
    for (_, c) in row.iter() {
        let d = c.as_rational().expect("rational entry").denominator();
        let g = lcm.clone().gcd(d);
        lcm = &lcm / &g * d;
    }
    let lcm = IBig::from(lcm);
    let mut out: Row<IBig> = row
        .iter()
        .map(|(j, c)| {
            let q = c.as_rational().unwrap();
            let scale = &lcm / IBig::from(q.denominator().clone());
            (*j, q.numerator() * scale)
        })
        .collect();
    IBig::normalize(&mut out);
    out
}

/// Computes the reduced row echelon form of `m`.
pub fn rref(m: &Matrix) -> Rref {
    let cols = m.cols();
    let all_rational = m.row_vecs().iter().all(|r| r.iter().all(|(_, c)| c.as_rational().is_some()));
    if all_rational {
        let rows = m.row_vecs().iter().filter(|r| !r.is_zero()).map(integer_row).collect();
        let (ech, pivots) = echelon(rows, cols);
        let rows = ech
            .into_iter()
            .map(|r| {
                let lead = r[0].1.clone();
                SparseVec::from_sorted(
                    r.into_iter()
                        .map(|(j, x)| (j, Scalar::Rational(RBig::from_parts_signed(x, lead.clone()))))
                        .collect(),
                )
            })
            .collect();
        Rref { rows, pivots, cols }
    } else {
        let rows = m.row_vecs().iter().filter(|r| !r.is_zero()).map(|r| r.entries().to_vec()).collect();
        let (ech, pivots) = echelon::<Scalar>(rows, cols);
        Rref { rows: ech.into_iter().map(SparseVec::from_sorted).collect(), pivots, cols }
    }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank()
}

pub fn kernel_basis(m: &Matrix) -> Vec<SparseVec> {
    rref(m).kernel()
}

/// Solves `a x = b`: one solution with free variables at zero, plus a kernel basis.
pub fn solve_affine(a: &Matrix, b: &SparseVec) -> Option<(SparseVec, Vec<SparseVec>)> {
    let n = a.cols();
    let bcol = Matrix::from_columns(a.rows(), std::slice::from_ref(b));
    let aug = Matrix::hstack(a.rows(), &[a.clone(), bcol]);
    let r = rref(&aug);
    if r.pivots.last() == Some(&n) {
        return None;
    }
    let x = SparseVec::from_terms(r.rows.iter().zip(&r.pivots).map(|(row, &p)| (p, row.get(n))));
    let homogeneous = Rref {
        rows: r.rows.iter().map(|row| SparseVec::from_terms(row.iter().filter(|(j, _)| *j < n).cloned())).collect(),
        pivots: r.pivots.clone(),
        cols: n,
    };
    Some((x, homogeneous.kernel()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use proptest::prelude::*;

    #[test]
    fn trivial_ranks() {
        assert_eq!(rank(&Matrix::zeros(3, 3)), 0);
        assert_eq!(rank(&Matrix::identity(4)), 4);
        assert!(kernel_basis(&Matrix::identity(4)).is_empty());
        let k = kernel_basis(&Matrix::zeros(3, 3));
        assert_eq!(k, (0..3).map(SparseVec::unit).collect::<Vec<_>>());
    }

    #[test]
    fn reduced_form_is_canonical() {
        let m = Matrix::from_i64(&[&[2, 4, 6], &[1, 2, 4], &[3, 6, 10]]);
        let r = rref(&m);
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.rows[0], SparseVec::from_terms([(0, Scalar::one()), (1, Scalar::from(2))]));
        assert_eq!(r.rows[1], SparseVec::unit(2));
        let k = r.kernel();
        assert_eq!(k, vec![SparseVec::from_terms([(0, Scalar::from(-2)), (1, Scalar::one())])]);
    }

    #[test]
    fn solve_examples() {
        let b = SparseVec::from_terms([(0, Scalar::ratio(1, 2)), (2, Scalar::from(7))]);
        let (x, k) = solve_affine(&Matrix::identity(3), &b).unwrap();
        assert_eq!(x, b);
        assert!(k.is_empty());
        assert!(solve_affine(&Matrix::zeros(2, 2), &SparseVec::unit(1)).is_none());
    }

    #[test]
    fn prime_and_cyclotomic_fields() {
        let f = Field::prime(5).unwrap();
        let m = Matrix::from_dense(&[vec![f.from_int(1), f.from_int(2)], vec![f.from_int(3), f.from_int(1)]]);
        // det = 1 - 6 = -5 = 0 mod 5
        assert_eq!(rank(&m), 1);
        let c = Field::cyclotomic(3).unwrap();
        let z = c.zeta().unwrap();
        let m = Matrix::from_dense(&[vec![c.one(), z.clone()], vec![z.clone(), z.pow(2)]]);
        assert_eq!(rank(&m), 1);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r).prop_map(|rows| {
                Matrix::from_dense(
                    &rows.iter().map(|row| row.iter().map(|&x| Scalar::from(x)).collect()).collect::<Vec<_>>(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.apply(v).is_zero());
            }
        }

        #[test]
        fn row_permutation_invariance(m in small_matrix(), seed in any::<u64>()) {
            let mut rows = m.row_vecs().to_vec();
            let n = rows.len();
            for i in (1..n).rev() {
                let j = (seed.wrapping_mul(6364136223846793005).wrapping_add(i as u64) % (i as u64 + 1)) as usize;
                rows.swap(i, j);
            }
            let p = Matrix::from_rows(m.cols(), rows);
            prop_assert_eq!(rref(&p), rref(&m));
        }

        #[test]
        fn affine_solutions_resubstitute(m in small_matrix(), x in proptest::collection::vec(-2i64..3, 6)) {
            let x = SparseVec::from_terms(x.iter().take(m.cols()).enumerate().map(|(i, &v)| (i, Scalar::from(v))));
            let b = m.apply(&x);
            let (sol, kernel) = solve_affine(&m, &b).expect("consistent by construction");
            prop_assert_eq!(m.apply(&sol), b);
            prop_assert_eq!(kernel.len(), m.cols() - rank(&m));
        }
    }
}
