//! Words over nonnegative integers.
//!
//! A word `w = x_1 x_2 ... x_n` is read with 1-based positions everywhere it
//! is reported. The boundary letters `x_0` and `x_{n+1}` are treated as `+∞`
//! and are never stored: every boundary comparison is special-cased.
//!
//! Positive letters carry a reduced position: the `k`-th positive letter from
//! the left has reduced position `k`. A positive letter is *excedent* when it
//! exceeds its reduced position and *subexcedent* when it is smaller.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Letter = u32;

/// Finite sequence of nonnegative integer letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

/// Classification of a single position of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LetterClass {
    Zero,
    Excedent,
    Subexcedent,
    /// Positive letter equal to its reduced position. Never occurs when the
    /// positive subword is a derangement.
    Neutral,
}

impl LetterClass {
    pub fn is_subexcedent(self) -> bool {
        self == LetterClass::Subexcedent
    }

    fn of(letter: Letter, rank: usize) -> Self {
        let letter = letter as usize;
        if letter == 0 {
            LetterClass::Zero
        } else if letter > rank {
            LetterClass::Excedent
        } else if letter < rank {
            LetterClass::Subexcedent
        } else {
            LetterClass::Neutral
        }
    }
}

/// Strictly increasing set of 1-based positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new() -> Self {
        IndexSet(Vec::new())
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(positions: I) -> Self {
        let mut v: Vec<usize> = positions.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.0.binary_search(&pos).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&i| i as u64).sum()
    }

    /// `{1, ..., n}` minus `self`.
    pub fn complement(&self, n: usize) -> Self {
        IndexSet((1..=n).filter(|&i| !self.contains(i)).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, pos) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{pos}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for IndexSet {
    type Err = Error;

    /// Accepts `{2,5,6}` or `2,5,6`; the empty set is `{}`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidIndexSet { text: s.to_string() };
        let trimmed = s.trim();
        let inner = match (trimmed.strip_prefix('{'), trimmed.ends_with('}')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => trimmed,
            _ => return Err(bad()),
        };
        let mut out = Vec::new();
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let pos: usize = tok.parse().map_err(|_| bad())?;
            if pos == 0 || out.last().is_some_and(|&prev| prev >= pos) {
                return Err(bad());
            }
            out.push(pos);
        }
        Ok(IndexSet(out))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter())
    }
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn from_slice(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn zeros(n: usize) -> Self {
        Word(vec![0; n])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letter at 1-based position `pos`.
    pub fn letter(&self, pos: usize) -> Option<Letter> {
        pos.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn zero_set(&self) -> IndexSet {
        IndexSet(positions_where(&self.0, |x| x == 0))
    }

    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|&&x| x == 0).count()
    }

    /// Number of positive letters.
    pub fn positive_count(&self) -> usize {
        self.0.len() - self.zero_count()
    }

    /// Subword of positive letters, in order.
    pub fn pos_subword(&self) -> Word {
        Word(self.0.iter().copied().filter(|&x| x > 0).collect())
    }

    pub fn des_set(&self) -> IndexSet {
        des_of(&self.0)
    }

    /// Rise set with the `x_{n+1} = +∞` convention, so `n` is always a rise.
    pub fn rise_set(&self) -> IndexSet {
        rise_of(&self.0)
    }

    pub fn maj(&self) -> u64 {
        self.des_set().sum()
    }

    /// Sum of zero positions, shifted so that leading zeros contribute
    /// nothing, plus the major index of the positive subword.
    pub fn mafz(&self) -> u64 {
        let zeros = self.zero_set();
        let z = zeros.len() as u64;
        zeros.sum() - z * (z + 1) / 2 + self.pos_subword().maj()
    }

    /// Order-preserving bijection from positive positions onto `1..=m`.
    pub fn red_map(&self) -> BTreeMap<usize, usize> {
        positions_where(&self.0, |x| x > 0).into_iter().enumerate().map(|(rank, pos)| (pos, rank + 1)).collect()
    }

    /// Class of every position, left to right.
    pub fn classes(&self) -> Vec<LetterClass> {
        classes_from_rank(&self.0, 0)
    }

    /// Class of position `k`. The virtual positions `0` and `n + 1` hold
    /// `+∞` and classify as excedent.
    pub fn classify(&self, k: usize) -> Result<LetterClass> {
        let n = self.0.len();
        if k == 0 || k == n + 1 {
            return Ok(LetterClass::Excedent);
        }
        if k > n + 1 {
            return Err(Error::PositionOutOfRange { pos: k, len: n });
        }
        let rank = self.0[..k].iter().filter(|&&x| x > 0).count();
        Ok(LetterClass::of(self.0[k - 1], rank))
    }

    /// Modified rise set. Defined only when no positive letter is neutral.
    pub fn rise_bullet_set(&self) -> Result<IndexSet> {
        rise_bullet_of(&self.0, &self.classes())
    }

    /// True when the word is a permutation of `1..=m` without fixed points.
    /// The empty word is the derangement of order 0.
    pub fn is_derangement(&self) -> bool {
        let m = self.0.len();
        let mut seen = vec![false; m + 1];
        for (idx, &x) in self.0.iter().enumerate() {
            let x = x as usize;
            if x == 0 || x > m || seen[x] || x == idx + 1 {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    pub(crate) fn ensure_pos_derangement(&self) -> Result<()> {
        let pos = self.pos_subword();
        if pos.is_derangement() {
            Ok(())
        } else {
            Err(Error::NotADerangement { pos_word: pos.to_string() })
        }
    }

    pub fn stats(&self) -> WordStats {
        WordStats {
            zero: self.zero_set(),
            pos: self.pos_subword().to_string(),
            des: self.des_set(),
            rise: self.rise_set(),
            rise_bullet: self.rise_bullet_set().ok(),
            maj: self.maj(),
            mafz: self.mafz(),
        }
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, x) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_letters(s).map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter())
    }
}

/// Word-level statistics in one bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordStats {
    #[serde(rename = "Zero")]
    pub zero: IndexSet,
    #[serde(rename = "Pos")]
    pub pos: String,
    #[serde(rename = "DES")]
    pub des: IndexSet,
    #[serde(rename = "RISE")]
    pub rise: IndexSet,
    /// `None` when a positive letter is neutral.
    #[serde(rename = "RISE•")]
    pub rise_bullet: Option<IndexSet>,
    pub maj: u64,
    pub mafz: u64,
}

pub(crate) fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.split_whitespace()
        .map(|tok| tok.parse::<Letter>().map_err(|_| Error::InvalidLetter { token: tok.to_string() }))
        .collect()
}

fn positions_where(letters: &[Letter], pred: impl Fn(Letter) -> bool) -> Vec<usize> {
    letters.iter().enumerate().filter(|&(_, &x)| pred(x)).map(|(i, _)| i + 1).collect()
}

pub fn des_of(letters: &[Letter]) -> IndexSet {
    IndexSet(letters.windows(2).enumerate().filter(|(_, w)| w[0] > w[1]).map(|(i, _)| i + 1).collect())
}

pub fn rise_of(letters: &[Letter]) -> IndexSet {
    let n = letters.len();
    IndexSet((1..=n).filter(|&i| i == n || letters[i - 1] <= letters[i]).collect())
}

/// Classes of `letters` when the first positive letter among them has
/// reduced position `first_rank + 1`. Used for factors of a larger word.
pub fn classes_from_rank(letters: &[Letter], first_rank: usize) -> Vec<LetterClass> {
    let mut rank = first_rank;
    letters
        .iter()
        .map(|&x| {
            if x > 0 {
                rank += 1;
            }
            LetterClass::of(x, rank)
        })
        .collect()
}

/// Modified rise set of a classified sequence, with `x_{n+1} = +∞` counted
/// as excedent.
pub fn rise_bullet_of(letters: &[Letter], classes: &[LetterClass]) -> Result<IndexSet> {
    debug_assert_eq!(letters.len(), classes.len());
    if let Some(pos) = classes.iter().position(|&c| c == LetterClass::Neutral) {
        return Err(Error::NeutralLetter { pos: pos + 1, letter: letters[pos] });
    }
    let n = letters.len();
    let mut out = Vec::new();
    for i in 1..=n {
        let x = letters[i - 1];
        let cls = classes[i - 1];
        let hit = if i == n {
            // 0 < x < +∞, or 0 followed by an excedent +∞
            true
        } else {
            let y = letters[i];
            let next = classes[i];
            (x > 0 && x < y)
                || (x == 0 && y == 0)
                || (x == 0 && next == LetterClass::Excedent)
                || (cls.is_subexcedent() && y == 0)
        };
        if hit {
            out.push(i);
        }
    }
    Ok(IndexSet(out))
}
