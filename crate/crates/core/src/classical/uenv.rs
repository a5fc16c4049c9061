use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::exactla::Scalar;
use crate::hopf::{lin_add, lin_single, HopfStructure, Lin};

use super::lie::LieAlgebra;

/// A PBW word: non-decreasing indices into the ordered Lie-algebra basis.
pub type PbwWord = Vec<usize>;

/// The enveloping algebra `U(g)` in its PBW basis.
///
/// Products are computed by straightening adjacent inversions with the bracket.
pub struct UEnvelope {
    lie: Arc<LieAlgebra>,
    cache: Mutex<BTreeMap<Vec<usize>, Lin<PbwWord>>>,
}

impl std::fmt::Debug for UEnvelope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "U({})", self.lie.name())
    }
}

impl UEnvelope {
    pub fn new(lie: Arc<LieAlgebra>) -> Self {
        Self { lie, cache: Mutex::new(BTreeMap::new()) }
    }

    pub fn lie(&self) -> &Arc<LieAlgebra> {
        &self.lie
    }

    /// All PBW words of length at most `max_len`, shortest first.
    pub fn pbw_words(&self, max_len: usize) -> Vec<PbwWord> {
        (0..=max_len).flat_map(|k| super::gc::multisets(self.lie.dim(), k)).collect()
    }

    pub fn is_pbw(word: &[usize]) -> bool {
        word.windows(2).all(|w| w[0] <= w[1])
    }

    /// Expresses an arbitrary word in the letters `X_i` in the PBW basis.
    pub fn straighten(&self, word: &[usize]) -> Lin<PbwWord> {
        if Self::is_pbw(word) {
            return lin_single(word.to_vec());
        }
        if let Some(hit) = self.cache.lock().unwrap().get(word) {
            return hit.clone();
        }
        let pos = word.windows(2).position(|w| w[0] > w[1]).expect("unsorted word has an inversion");
        let (b, a) = (word[pos], word[pos + 1]);
        let mut swapped = word.to_vec();
        swapped.swap(pos, pos + 1);
        let mut out = self.straighten(&swapped);
        for (k, c) in self.lie.bracket_basis(b, a).iter() {
            let shorter = [&word[..pos], &[*k], &word[pos + 2..]].concat();
            for (w, x) in self.straighten(&shorter) {
                lin_add(&mut out, w, c * &x);
            }
        }
        self.cache.lock().unwrap().insert(word.to_vec(), out.clone());
        out
    }

    pub fn straighten_lin(&self, words: &Lin<Vec<usize>>) -> Lin<PbwWord> {
        let mut out = Lin::new();
        for (w, c) in words {
            for (k, x) in self.straighten(w) {
                lin_add(&mut out, k, c * &x);
            }
        }
        out
    }
}

impl HopfStructure for UEnvelope {
    type Key = PbwWord;

    fn unit(&self) -> Lin<PbwWord> {
        lin_single(Vec::new())
    }

    fn counit(&self, k: &PbwWord) -> Scalar {
        if k.is_empty() {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    /// Shuffle coproduct: sub-words of a PBW word are PBW words.
    fn coproduct(&self, k: &PbwWord) -> Vec<(PbwWord, PbwWord, Scalar)> {
        let n = k.len();
        let mut acc: BTreeMap<(PbwWord, PbwWord), Scalar> = BTreeMap::new();
        for mask in 0u32..(1 << n) {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (i, &x) in k.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    left.push(x);
                } else {
                    right.push(x);
                }
            }
            *acc.entry((left, right)).or_insert_with(Scalar::zero) += &Scalar::one();
        }
        acc.into_iter().map(|((l, r), c)| (l, r, c)).collect()
    }

    fn antipode(&self, k: &PbwWord) -> Lin<PbwWord> {
        let reversed: Vec<usize> = k.iter().rev().copied().collect();
        let sign = if k.len() % 2 == 0 { Scalar::one() } else { Scalar::from(-1) };
        self.straighten(&reversed).into_iter().map(|(w, c)| (w, &c * &sign)).collect()
    }

    fn product(&self, a: &PbwWord, b: &PbwWord) -> Lin<PbwWord> {
        self.straighten(&[a.as_slice(), b.as_slice()].concat())
    }

    fn label(&self, k: &PbwWord) -> String {
        if k.is_empty() {
            return "1".into();
        }
        k.iter().map(|&i| self.lie.labels()[i].as_str()).collect::<Vec<_>>().join("*")
    }
}
