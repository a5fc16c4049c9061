use std::collections::BTreeMap;

use crate::exactla::{Matrix, Scalar, SparseVec};
use crate::operation::GradedDga;

/// Basis monomial of a free graded-commutative algebra: a strictly increasing list of
/// odd generators (degree 1) times a non-decreasing list of even generators (degree 2).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub odd: Vec<usize>,
    pub even: Vec<usize>,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.odd.len() + 2 * self.even.len()
    }

    /// Generators in the canonical order: odd ones first, then even ones.
    fn factors(&self) -> Vec<Generator> {
        self.odd.iter().map(|&j| Generator::Odd(j)).chain(self.even.iter().map(|&j| Generator::Even(j))).collect()
    }

    fn from_factors(factors: &[Generator]) -> Monomial {
        let mut m = Monomial { odd: Vec::new(), even: Vec::new() };
        for g in factors {
            match *g {
                Generator::Odd(j) => m.odd.push(j),
                Generator::Even(j) => m.even.push(j),
            }
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Generator {
    Odd(usize),
    Even(usize),
}

impl Generator {
    fn degree(self) -> usize {
        match self {
            Generator::Odd(_) => 1,
            Generator::Even(_) => 2,
        }
    }
}

/// `Lambda(odd generators) (x) S(even generators)` truncated at `cutoff`.
#[derive(Clone, Debug)]
pub struct GcAlgebra {
    odd_names: Vec<String>,
    even_names: Vec<String>,
    cutoff: usize,
    basis: Vec<Vec<Monomial>>,
    index: BTreeMap<Monomial, usize>,
}

/// Strictly increasing sequences of length `k` over `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    sequences(n, k, 1)
}

/// Non-decreasing sequences of length `k` over `0..n`, in lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    sequences(n, k, 0)
}

fn sequences(n: usize, k: usize, step: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, step: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for x in start..n {
            prefix.push(x);
            go(x + step, n, k, step, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, step, &mut Vec::new(), &mut out);
    out
}

/// Sign of the permutation sorting `v`, or `None` if an entry repeats.
fn sort_sign(v: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

impl GcAlgebra {
    pub fn new(odd_names: Vec<String>, even_names: Vec<String>, cutoff: usize) -> Self {
        let (no, ne) = (odd_names.len(), even_names.len());
        let mut basis = Vec::with_capacity(cutoff + 1);
        let mut index = BTreeMap::new();
        for n in 0..=cutoff {
            let mut level = Vec::new();
            for k in (0..=n.min(no)).filter(|k| (n - k) % 2 == 0) {
                let j = (n - k) / 2;
                if ne == 0 && j > 0 {
                    continue;
                }
                for odd in subsets(no, k) {
                    for even in multisets(ne, j) {
                        level.push(Monomial { odd: odd.clone(), even });
                    }
                }
            }
            level.sort();
            for (i, m) in level.iter().enumerate() {
                index.insert(m.clone(), i);
            }
            basis.push(level);
        }
        Self { odd_names, even_names, cutoff, basis, index }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.basis.get(n).map_or(0, Vec::len)
    }

    pub fn basis(&self, n: usize) -> &[Monomial] {
        &self.basis[n]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn odd_count(&self) -> usize {
        self.odd_names.len()
    }

    pub fn even_count(&self) -> usize {
        self.even_names.len()
    }

    pub fn label(&self, n: usize, i: usize) -> String {
        let m = &self.basis[n][i];
        if m.degree() == 0 {
            return "1".into();
        }
        let names = m.odd.iter().map(|&j| self.odd_names[j].as_str()).chain(m.even.iter().map(|&j| self.even_names[j].as_str()));
        names.collect::<Vec<_>>().join(" ")
    }

    pub fn odd_generator(&self, j: usize) -> SparseVec {
        SparseVec::unit(self.index[&Monomial { odd: vec![j], even: Vec::new() }])
    }

    pub fn even_generator(&self, j: usize) -> SparseVec {
        SparseVec::unit(self.index[&Monomial { odd: Vec::new(), even: vec![j] }])
    }

    /// Product of two monomials with its Koszul sign; `None` if it vanishes.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, Scalar)> {
        let mut odd = [a.odd.clone(), b.odd.clone()].concat();
        let flipped = sort_sign(&mut odd)?;
        let mut even = [a.even.clone(), b.even.clone()].concat();
        even.sort_unstable();
        let sign = if flipped { Scalar::from(-1) } else { Scalar::one() };
        Some((Monomial { odd, even }, sign))
    }

    /// Product of a degree-`p` element by a degree-`q` element, `p + q <= cutoff`.
    pub fn mul(&self, p: usize, u: &SparseVec, q: usize, v: &SparseVec) -> SparseVec {
        assert!(p + q <= self.cutoff, "product degree {} beyond cutoff {}", p + q, self.cutoff);
        let mut terms = Vec::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                if let Some((m, s)) = self.mul_monomials(&self.basis[p][*i], &self.basis[q][*j]) {
                    terms.push((self.index[&m], &(a * b) * &s));
                }
            }
        }
        SparseVec::from_terms(terms)
    }

    /// Matrix on degree `n` of the (anti)derivation of degree `shift` with the given values
    /// on odd generators (degree `1 + shift`) and even generators (degree `2 + shift`).
    /// Odd `shift` means an antiderivation: passing an odd generator costs a sign.
    pub fn derivation_matrix(&self, n: usize, shift: isize, odd_values: &[SparseVec], even_values: &[SparseVec]) -> Matrix {
        let target = n as isize + shift;
        let rows = if target < 0 { 0 } else { self.dim(target as usize) };
        if target < 0 || target as usize > self.cutoff {
            return Matrix::zeros(rows, self.dim(n));
        }
        let anti = shift.rem_euclid(2) == 1;
        let cols: Vec<SparseVec> = self.basis[n]
            .iter()
            .map(|m| {
                let factors = m.factors();
                let mut total = SparseVec::new();
                let mut odd_before = 0;
                for (t, g) in factors.iter().enumerate() {
                    let value_degree = g.degree() as isize + shift;
                    let value = match *g {
                        Generator::Odd(j) => &odd_values[j],
                        Generator::Even(j) => &even_values[j],
                    };
                    if value_degree >= 0 && !value.is_zero() {
                        let prefix = Monomial::from_factors(&factors[..t]);
                        let suffix = Monomial::from_factors(&factors[t + 1..]);
                        let (pd, sd) = (prefix.degree(), suffix.degree());
                        let left = self.mul(pd, &SparseVec::unit(self.index[&prefix]), value_degree as usize, value);
                        let term = self.mul(pd + value_degree as usize, &left, sd, &SparseVec::unit(self.index[&suffix]));
                        let sign = if anti && odd_before % 2 == 1 { Scalar::from(-1) } else { Scalar::one() };
                        total = total.add_scaled(&sign, &term);
                    }
                    if let Generator::Odd(_) = g {
                        odd_before += 1;
                    }
                }
                total
            })
            .collect();
        Matrix::from_columns(rows, &cols)
    }

    /// The truncated algebra as a [`GradedDga`] with differentials `d[n]`, `n < cutoff`.
    pub fn dga(&self, name: &str, d: Vec<Matrix>) -> GradedDga {
        let labels = (0..=self.cutoff).map(|n| (0..self.dim(n)).map(|i| self.label(n, i)).collect()).collect();
        GradedDga::new(name, self.dims(), d, SparseVec::unit(0), labels, |p, i, q, j| {
            self.mul(p, &SparseVec::unit(i), q, &SparseVec::unit(j))
        })
    }
}
