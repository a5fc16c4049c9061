//! The canonical extension `h -> L_h` to `U(g)`, the shuffle identity, and the
//! non-canonical extension `h -> bar i_h` of the contractions.

use serde::Serialize;

use crate::exactla::{Matrix, Scalar, SparseVec};
use crate::hopf::{lin_add, HopfStructure, Lin};
use crate::operation::Check;

use super::ops::ClassicalOperation;
use super::uenv::{PbwWord, UEnvelope};
use super::ClassicalError;

/// `L_(Y_1 ... Y_n) = L_(Y_1) o ... o L_(Y_n)` on degree `n`, for any word.
pub fn u_ext_l(op: &ClassicalOperation, word: &[usize], n: usize) -> Matrix {
    op.operation().l(&word.to_vec(), n).as_ref().clone()
}

fn l_lin(op: &ClassicalOperation, h: &Lin<PbwWord>, n: usize) -> Matrix {
    op.operation().l_lin(h, n)
}

/// `i_v` for `v` a combination of words of length one.
fn i_primitive(op: &ClassicalOperation, v: &Lin<PbwWord>, n: usize) -> Matrix {
    let coords = SparseVec::from_terms(v.iter().map(|(w, c)| {
        assert_eq!(w.len(), 1, "expected an element of g, found the word {w:?}");
        (w[0], c.clone())
    }));
    op.i_vec(&coords, n)
}

fn word_label(op: &ClassicalOperation, w: &[usize]) -> String {
    op.envelope().label(&w.to_vec())
}

/// Properties (a)-(d) of the canonical extension, for every PBW word of length `<= max_len`.
pub fn check_lext_u(op: &ClassicalOperation, max_len: usize) -> Vec<Check> {
    let u = op.envelope();
    let dga = op.operation().dga();
    let cutoff = op.cutoff();
    let words = u.pbw_words(max_len);
    let mut out = Vec::new();

    let mut wa = None;
    let mut wb = None;
    for h in &words {
        for n in 0..cutoff {
            if wa.is_none() && dga.d(n).mul(&u_ext_l(op, h, n)) != u_ext_l(op, h, n + 1).mul(dga.d(n)) {
                wa = Some(format!("h={}, degree {n}", word_label(op, h)));
            }
        }
        let expected = dga.unit().scaled(&u.counit(h));
        if wb.is_none() && u_ext_l(op, h, 0).apply(dga.unit()) != expected {
            wb = Some(format!("h={}", word_label(op, h)));
        }
    }
    out.push(Check::new("LextU_a", None, wa));
    out.push(Check::new("LextU_b", None, wb));

    let mut wc = None;
    'c: for h in &words {
        let delta = u.coproduct(h);
        for p in 0..=cutoff {
            for q in 0..=cutoff - p {
                let lh = u_ext_l(op, h, p + q);
                let parts: Vec<(Matrix, Matrix, &Scalar)> =
                    delta.iter().map(|(a, b, c)| (u_ext_l(op, a, p), u_ext_l(op, b, q), c)).collect();
                for x in 0..dga.dim(p) {
                    for y in 0..dga.dim(q) {
                        let (ex, ey) = (SparseVec::unit(x), SparseVec::unit(y));
                        let lhs = lh.apply(&dga.mul(p, &ex, q, &ey));
                        let rhs = parts.iter().fold(SparseVec::new(), |acc, (la, lb, c)| {
                            acc.add_scaled(c, &dga.mul(p, &la.apply(&ex), q, &lb.apply(&ey)))
                        });
                        if lhs != rhs {
                            wc = Some(format!("h={}, on {} * {}", word_label(op, h), dga.label(p, x), dga.label(q, y)));
                            break 'c;
                        }
                    }
                }
            }
        }
    }
    out.push(Check::new("LextU_c", None, wc));

    let mut wd = None;
    'd: for h in &words {
        let delta = u.coproduct(h);
        for x in 0..op.lie().dim() {
            for n in 1..=cutoff {
                let lhs = op.i(x, n).mul(&u_ext_l(op, h, n));
                let mut rhs = Matrix::zeros(dga.dim(n - 1), dga.dim(n));
                for (h1, h2, c) in &delta {
                    let adx = u.ad(h2, &vec![x]);
                    rhs = rhs.add_scaled(c, &u_ext_l(op, h1, n - 1).mul(&i_primitive(op, &adx, n)));
                }
                if lhs != rhs {
                    wd = Some(format!("X={}, h={}, degree {n}", op.lie().labels()[x], word_label(op, h)));
                    break 'd;
                }
            }
        }
    }
    out.push(Check::new("LextU_d", None, wd));
    out
}

/// Both sides of the shuffle identity for `i_X L_(Y_1 ... Y_n)` on every degree.
pub fn check_shuffle_identity(op: &ClassicalOperation, x: usize, word: &[usize]) -> Check {
    let lie = op.lie();
    let n = word.len();
    let dga = op.operation().dga();
    let mut witness = None;
    for m in 1..=op.cutoff() {
        let lhs = op.i(x, m).mul(&u_ext_l(op, word, m));
        let mut rhs = Matrix::zeros(dga.dim(m - 1), dga.dim(m));
        for mask in 0u32..(1 << n) {
            // positions in the mask go to L, the others are bracketed onto X in order
            let kept: Vec<usize> = (0..n).filter(|t| mask & (1 << t) != 0).map(|t| word[t]).collect();
            let nested = (0..n)
                .filter(|t| mask & (1 << t) == 0)
                .fold(SparseVec::unit(x), |acc, t| lie.bracket(&acc, &SparseVec::unit(word[t])));
            rhs = rhs.add(&u_ext_l(op, &kept, m - 1).mul(&op.i_vec(&nested, m)));
        }
        if lhs != rhs {
            witness = Some(format!("degree {m}"));
            break;
        }
    }
    let label = |w: &[usize]| w.iter().map(|&k| lie.labels()[k].as_str()).collect::<Vec<_>>().join("*");
    let name = format!("Lig[X={}, Y={}]", lie.labels()[x], if word.is_empty() { "1".into() } else { label(word) });
    Check::new(name, None, witness)
}

/// The shuffle identity for every `X` and every word (sorted or not) of length `<= max_len`.
pub fn check_all_shuffles(op: &ClassicalOperation, max_len: usize) -> Vec<Check> {
    let n = op.lie().dim();
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut level = vec![Vec::new()];
    for _ in 0..max_len {
        level = level.iter().flat_map(|w: &Vec<usize>| (0..n).map(move |k| [w.clone(), vec![k]].concat())).collect();
        words.extend(level.iter().cloned());
    }
    words.iter().flat_map(|w| (0..n).map(move |x| (x, w))).map(|(x, w)| check_shuffle_identity(op, x, w)).collect()
}

/// How `bar i` is extended from powers `X^n` to mixed PBW monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BarConvention {
    /// Through the symmetrization isomorphism `S(g) -> U(g)`:
    /// `bar i_(sym(Y_1...Y_n)) = (1/n) sum_k L_(sym(Y without Y_k)) i_(Y_k)`.
    Symmetrized,
    /// `bar i_(Y_1 ... Y_n) = L_(Y_1) ... L_(Y_(n-1)) i_(Y_n)` on sorted words.
    LeftIterated,
}

fn permutations(w: &[usize]) -> Vec<Vec<usize>> {
    if w.len() <= 1 {
        return vec![w.to_vec()];
    }
    let mut out = Vec::new();
    for t in 0..w.len() {
        let rest = [&w[..t], &w[t + 1..]].concat();
        for mut p in permutations(&rest) {
            p.insert(0, w[t]);
            out.push(p);
        }
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `sym(w)` expanded in the PBW basis.
fn symmetrized(u: &UEnvelope, w: &[usize]) -> Lin<PbwWord> {
    let weight = Scalar::ratio(1, factorial(w.len()));
    let mut out = Lin::new();
    for p in permutations(w) {
        for (k, c) in u.straighten(&p) {
            lin_add(&mut out, k, &c * &weight);
        }
    }
    out
}

/// Coordinates of a PBW combination in the symmetrized basis, keyed by sorted multisets.
pub fn to_symmetric(u: &UEnvelope, h: &Lin<PbwWord>) -> Lin<PbwWord> {
    let mut rest = h.clone();
    let mut out = Lin::new();
    while let Some(top) = rest.keys().max_by_key(|w| (w.len(), (*w).clone())).cloned() {
        let c = rest[&top].clone();
        lin_add(&mut out, top.clone(), c.clone());
        for (k, x) in symmetrized(u, &top) {
            lin_add(&mut rest, k, -(&c * &x));
        }
    }
    out
}

fn l_symmetrized(op: &ClassicalOperation, w: &[usize], n: usize) -> Matrix {
    let weight = Scalar::ratio(1, factorial(w.len()));
    let dim = op.operation().dga().dim(n);
    permutations(w).iter().fold(Matrix::zeros(dim, dim), |acc, p| acc.add_scaled(&weight, &u_ext_l(op, p, n)))
}

/// `bar i_h : Omega^n -> Omega^(n-1)` for a PBW combination `h`.
pub fn bar_i(op: &ClassicalOperation, conv: BarConvention, h: &Lin<PbwWord>, n: usize) -> Result<Matrix, ClassicalError> {
    op.check_degree(n)?;
    if let Some(bad) = h.keys().find(|w| !UEnvelope::is_pbw(w)) {
        return Err(ClassicalError::Unsorted(bad.clone()));
    }
    let dga = op.operation().dga();
    let rows = if n == 0 { 0 } else { dga.dim(n - 1) };
    let mut out = Matrix::zeros(rows, dga.dim(n));
    if n == 0 {
        return Ok(out);
    }
    match conv {
        BarConvention::LeftIterated => {
            for (w, c) in h {
                if let Some((last, init)) = w.split_last() {
                    out = out.add_scaled(c, &u_ext_l(op, init, n - 1).mul(&op.i(*last, n)));
                }
            }
        }
        BarConvention::Symmetrized => {
            for (w, c) in to_symmetric(op.envelope(), h) {
                let r = w.len();
                if r == 0 {
                    continue;
                }
                let weight = &c * &Scalar::ratio(1, r as i64);
                for k in 0..r {
                    let others = [&w[..k], &w[k + 1..]].concat();
                    out = out.add_scaled(&weight, &l_symmetrized(op, &others, n - 1).mul(&op.i(w[k], n)));
                }
            }
        }
    }
    Ok(out)
}

fn single(w: &[usize]) -> Lin<PbwWord> {
    crate::hopf::lin_single(w.to_vec())
}

/// The three relations satisfied by `bar i`, on PBW words of length `<= max_len`.
///
/// Also reports the power rule `bar i_(X^(n+1)) = L_X^n i_X` that both conventions share.
pub fn check_propbari(op: &ClassicalOperation, conv: BarConvention, max_len: usize) -> Result<Vec<Check>, ClassicalError> {
    let u = op.envelope();
    let dga = op.operation().dga();
    let cutoff = op.cutoff();
    let words = u.pbw_words(max_len);
    let bar = |h: &Lin<PbwWord>, n: usize| bar_i(op, conv, h, n);
    let mut out = Vec::new();

    let unit_zero = (0..=cutoff).all(|n| bar(&single(&[]), n).map(|m| m.is_zero()).unwrap_or(false));
    out.push(Check::from_bool("bari_unit", None, unit_zero, || "bar i_1 is nonzero".into()));

    let mut wpow = None;
    for x in 0..op.lie().dim() {
        for r in 1..=max_len {
            let w = vec![x; r];
            for n in 1..=cutoff {
                let lx = u_ext_l(op, &vec![x; r - 1], n - 1);
                if wpow.is_none() && bar(&single(&w), n)? != lx.mul(&op.i(x, n)) {
                    wpow = Some(format!("h={}, degree {n}", word_label(op, &w)));
                }
            }
        }
    }
    out.push(Check::new("bari_powers", None, wpow));

    let mut whomotopy = None;
    for h in &words {
        let hl = single(h);
        // the top degree lacks the outgoing differential
        for n in 0..cutoff {
            let mut lhs = u_ext_l(op, h, n).sub(&Matrix::scalar(dga.dim(n), &u.counit(h)));
            if n > 0 {
                lhs = lhs.sub(&dga.d(n - 1).mul(&bar(&hl, n)?));
            }
            lhs = lhs.sub(&bar(&hl, n + 1)?.mul(dga.d(n)));
            if whomotopy.is_none() && !lhs.is_zero() {
                whomotopy = Some(format!("h={}, degree {n}", word_label(op, h)));
            }
        }
    }
    out.push(Check::new("bari_homotopy", None, whomotopy));

    let mut wcr = None;
    'cr: for g in &words {
        for h in &words {
            let delta = u.coproduct(h);
            for n in 1..=cutoff {
                let lhs = bar(&single(g), n)?.mul(&u_ext_l(op, h, n));
                let mut rhs = Matrix::zeros(dga.dim(n - 1), dga.dim(n));
                for (h1, h2, c) in &delta {
                    let adg = u.ad(h2, g);
                    rhs = rhs.add_scaled(c, &l_lin(op, &single(h1), n - 1).mul(&bar(&adg, n)?));
                }
                if lhs != rhs {
                    wcr = Some(format!("g={}, h={}, degree {n}", word_label(op, g), word_label(op, h)));
                    break 'cr;
                }
            }
        }
    }
    out.push(Check::new("bari_equivariance", None, wcr));
    Ok(out)
}
