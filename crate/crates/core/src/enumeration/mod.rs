//! Deterministic generators for permutations, derangements and shuffle
//! classes, joint distribution tables, and the exhaustive verifiers.
//!
//! Every generator yields its objects in lexicographic order so that
//! counterexample reports are reproducible.

mod table;
mod verify;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};
use crate::zder::Permutation;

pub use table::{joint_distribution, DistributionTable, Stat};
pub use verify::{verify_claim, Claim, VerifyParams, SLICE_MAX_LETTER};

/// Largest `n` the permutation generators accept unless overridden.
pub const DEFAULT_ENUM_CAP: usize = 9;

/// Default upper end of the exhaustive sweeps.
pub const DEFAULT_SWEEP_MAX_N: usize = 7;

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// Lexicographic stream of the permutations of `1..=n`.
#[derive(Clone, Debug)]
pub struct Permutations {
    next: Option<Vec<u32>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation::from_vec_unchecked(current))
    }
}

fn next_lexicographic(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("v[i+1] > v[i]");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

pub fn enum_permutations(n: usize, cap: usize) -> Result<Permutations> {
    check_cap(n, cap)?;
    Ok(Permutations { next: Some((1..=n as u32).collect()) })
}

/// Fixed-point-free permutations of `1..=m`, as words.
pub fn enum_derangements(m: usize, cap: usize) -> Result<impl Iterator<Item = Word>> {
    Ok(enum_permutations(m, cap)?.filter(Permutation::is_derangement).map(|p| p.as_word()))
}

/// The shuffle class `Sh(0^{n-m} v)`: length-`n` words whose positive
/// subword is `v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShuffleClassId {
    n: usize,
    v: Word,
}

impl ShuffleClassId {
    pub fn new(n: usize, v: Word) -> Result<Self> {
        if v.letters().contains(&0) {
            return Err(Error::ZeroInPositiveWord);
        }
        if v.len() > n {
            return Err(Error::ClassTooShort { m: v.len(), n });
        }
        Ok(ShuffleClassId { n, v })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn v(&self) -> &Word {
        &self.v
    }

    pub fn zeros(&self) -> usize {
        self.n - self.v.len()
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.len() == self.n && w.pos_subword() == self.v
    }

    /// `C(n, n - m)`.
    pub fn size(&self) -> u64 {
        binomial(self.n as u64, self.v.len() as u64)
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> Vec<Word> {
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut buf = Vec::with_capacity(self.n);
        shuffle_rec(self.zeros(), self.v.letters(), &mut buf, &mut out);
        out
    }
}

fn shuffle_rec(zeros: usize, rest: &[Letter], buf: &mut Vec<Letter>, out: &mut Vec<Word>) {
    if zeros == 0 && rest.is_empty() {
        out.push(Word::from_slice(buf));
        return;
    }
    // 0 sorts before every positive letter
    if zeros > 0 {
        buf.push(0);
        shuffle_rec(zeros - 1, rest, buf, out);
        buf.pop();
    }
    if let Some((&x, tail)) = rest.split_first() {
        buf.push(x);
        shuffle_rec(zeros, tail, buf, out);
        buf.pop();
    }
}

pub fn enum_shuffle_class(id: &ShuffleClassId, cap: usize) -> Result<std::vec::IntoIter<Word>> {
    check_cap(id.n(), cap)?;
    Ok(id.members().into_iter())
}

/// All classes `Sh(0^{n-m} v)` with `v` a derangement of order `m <= n`;
/// their union is the image of `S_n` under `ZDer`.
pub fn derangement_classes(n: usize, cap: usize) -> Result<Vec<ShuffleClassId>> {
    check_cap(n, cap)?;
    let mut out = Vec::new();
    for m in 0..=n {
        for v in enum_derangements(m, cap)? {
            out.push(ShuffleClassId { n, v });
        }
    }
    Ok(out)
}

/// Positive words of length at most `max_len` over `1..=max_letter`, shortest
/// first, lexicographic within a length.
pub fn positive_words(max_len: usize, max_letter: Letter) -> Vec<Word> {
    let mut out = vec![Word::default()];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * max_letter as usize);
        for prefix in &layer {
            for x in 1..=max_letter {
                let mut v = prefix.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| Word::from_slice(v)));
        layer = next;
    }
    out
}

/// Every word of length `n` over `0..=max_letter`, lexicographic.
pub fn all_words(n: usize, max_letter: Letter) -> Vec<Word> {
    let base = max_letter as usize + 1;
    let total = base.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut letters = vec![0; n];
            for slot in letters.iter_mut().rev() {
                *slot = (idx % base) as Letter;
                idx /= base;
            }
            Word::new(letters)
        })
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
