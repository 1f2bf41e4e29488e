//! The zero-moving bijection `Φ` on shuffle classes over a derangement, its
//! inverse `Ψ`, and the factor-by-factor recomputation of `Φ` through
//! canonical factorizations.
//!
//! Every map here moves zeros only: the positive subword, and therefore the
//! class of every positive letter, is unchanged. Neighbors outside the word
//! are `+∞` and count as non-subexcedent.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{classes_from_rank, rise_bullet_of, rise_of, Letter, LetterClass, Word};

/// Which rule a single `φ_l` step applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PhiCase {
    /// Both neighbors non-subexcedent: the zero stays.
    Case1,
    /// The zero slides right past an increasing subexcedent chain.
    Case2,
    /// The zero slides left before a decreasing subexcedent chain.
    Case3,
}

/// Which rule a single `ψ_l` step applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PsiCase {
    Case1,
    /// The zero slides left before the increasing chain ending at its left
    /// neighbor.
    Case2,
    /// The zero slides right past the decreasing chain starting at its right
    /// neighbor.
    Case3,
}

/// One application of `φ_l` or `ψ_l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroMove<C> {
    pub l: usize,
    /// Position of the `l`-th zero before the move.
    pub j: usize,
    pub case: C,
    /// `k` for a right slide, `i` for a left slide.
    pub pivot: Option<usize>,
    pub result: Word,
}

#[derive(Clone, Copy)]
enum Side {
    Boundary,
    Letter(Letter, LetterClass),
}

impl Side {
    fn subexcedent(self) -> Option<Letter> {
        match self {
            Side::Letter(x, LetterClass::Subexcedent) => Some(x),
            _ => None,
        }
    }
}

struct Frame<'a> {
    letters: &'a [Letter],
    classes: Vec<LetterClass>,
}

impl<'a> Frame<'a> {
    fn new(letters: &'a [Letter], classes: Vec<LetterClass>) -> Self {
        Frame { letters, classes }
    }

    fn len(&self) -> usize {
        self.letters.len()
    }

    fn x(&self, pos: usize) -> Letter {
        self.letters[pos - 1]
    }

    fn is_sub(&self, pos: usize) -> bool {
        self.classes[pos - 1].is_subexcedent()
    }

    fn side(&self, pos: usize) -> Side {
        if pos == 0 || pos > self.len() {
            Side::Boundary
        } else {
            Side::Letter(self.x(pos), self.classes[pos - 1])
        }
    }

    /// Greatest `k >= start`, `k <= end`, with `x_start < ... < x_k` positive
    /// and `x_k` subexcedent.
    fn increasing_sub_end(&self, start: usize, end: usize) -> usize {
        let mut k = start;
        let mut best = start;
        while k < end && self.x(k + 1) > self.x(k) {
            k += 1;
            if self.is_sub(k) {
                best = k;
            }
        }
        best
    }

    /// Smallest `i <= end` with `x_i > ... > x_end` and `x_i` subexcedent.
    fn decreasing_sub_start(&self, end: usize) -> usize {
        let mut i = end;
        let mut best = end;
        while i > 1 && self.x(i - 1) > self.x(i) {
            i -= 1;
            if self.is_sub(i) {
                best = i;
            }
        }
        best
    }

    /// Smallest `i <= end` with `0 < x_i < ... < x_end`.
    fn increasing_positive_start(&self, end: usize) -> usize {
        let mut i = end;
        while i > 1 && self.x(i - 1) > 0 && self.x(i - 1) < self.x(i) {
            i -= 1;
        }
        i
    }

    /// Greatest `k >= start` with `x_start > ... > x_k > 0`.
    fn decreasing_positive_end(&self, start: usize) -> usize {
        let mut k = start;
        while k < self.len() && self.x(k + 1) > 0 && self.x(k + 1) < self.x(k) {
            k += 1;
        }
        k
    }
}

fn nth_zero(letters: &[Letter], l: usize) -> Option<usize> {
    letters.iter().enumerate().filter(|(_, &x)| x == 0).nth(l - 1).map(|(i, _)| i + 1)
}

/// Moves the zero at position `from` so that it ends at position `to`.
fn relocate_zero(letters: &mut Vec<Letter>, from: usize, to: usize) {
    let z = letters.remove(from - 1);
    debug_assert_eq!(z, 0);
    letters.insert(to - 1, 0);
}

fn check_l(w: &Word, l: usize) -> Result<()> {
    if l == 0 || l > w.len() {
        return Err(Error::ZeroIndexOutOfRange { l, len: w.len() });
    }
    Ok(())
}

fn phi_step(w: &Word, l: usize) -> Result<Option<ZeroMove<PhiCase>>> {
    w.ensure_pos_derangement()?;
    check_l(w, l)?;
    let Some(j) = nth_zero(w.letters(), l) else {
        return Ok(None);
    };
    let frame = Frame::new(w.letters(), w.classes());
    let left = frame.side(j - 1).subexcedent();
    let right = frame.side(j + 1).subexcedent();
    let case = match (left, right) {
        (None, None) => PhiCase::Case1,
        (None, Some(_)) => PhiCase::Case2,
        (Some(_), None) => PhiCase::Case3,
        (Some(a), Some(b)) if a > b => PhiCase::Case2,
        (Some(_), Some(_)) => PhiCase::Case3,
    };
    let mut letters = w.letters().to_vec();
    let pivot = match case {
        PhiCase::Case1 => None,
        PhiCase::Case2 => {
            let k = frame.increasing_sub_end(j + 1, frame.len());
            relocate_zero(&mut letters, j, k);
            Some(k)
        }
        PhiCase::Case3 => {
            let i = frame.decreasing_sub_start(j - 1);
            relocate_zero(&mut letters, j, i);
            Some(i)
        }
    };
    Ok(Some(ZeroMove { l, j, case, pivot, result: Word::new(letters) }))
}

/// `φ_l`: moves the `l`-th zero of `w` (counted left to right). Words with
/// fewer than `l` zeros are returned unchanged.
pub fn phi_l(w: &Word, l: usize) -> Result<Word> {
    Ok(phi_step(w, l)?.map_or_else(|| w.clone(), |m| m.result))
}

/// `Φ = φ_1 φ_2 ... φ_n`, applied right to left (`φ_n` acts first).
pub fn phi(w: &Word) -> Result<Word> {
    Ok(phi_trace(w)?.last().map_or_else(|| w.clone(), |m| m.result.clone()))
}

/// Every nontrivial `φ_l` application of `Φ(w)`, in order of application.
/// Steps for `l` greater than the number of zeros are identities and are
/// omitted.
pub fn phi_trace(w: &Word) -> Result<Vec<ZeroMove<PhiCase>>> {
    w.ensure_pos_derangement()?;
    let mut cur = w.clone();
    let mut steps = Vec::new();
    for l in (1..=w.zero_count()).rev() {
        let step = phi_step(&cur, l)?.expect("zero count is preserved");
        cur = step.result.clone();
        steps.push(step);
    }
    Ok(steps)
}

fn psi_step(w: &Word, l: usize) -> Result<Option<ZeroMove<PsiCase>>> {
    w.ensure_pos_derangement()?;
    check_l(w, l)?;
    let Some(j) = nth_zero(w.letters(), l) else {
        return Ok(None);
    };
    let frame = Frame::new(w.letters(), w.classes());
    let left = frame.side(j - 1).subexcedent();
    let right = frame.side(j + 1).subexcedent();
    let case = match (left, right) {
        (None, None) => PsiCase::Case1,
        (Some(_), None) => PsiCase::Case2,
        (None, Some(_)) => PsiCase::Case3,
        (Some(a), Some(b)) if a > b => PsiCase::Case2,
        (Some(_), Some(_)) => PsiCase::Case3,
    };
    let mut letters = w.letters().to_vec();
    let pivot = match case {
        PsiCase::Case1 => None,
        PsiCase::Case2 => {
            let i = frame.increasing_positive_start(j - 1);
            relocate_zero(&mut letters, j, i);
            Some(i)
        }
        PsiCase::Case3 => {
            let k = frame.decreasing_positive_end(j + 1);
            relocate_zero(&mut letters, j, k);
            Some(k)
        }
    };
    Ok(Some(ZeroMove { l, j, case, pivot, result: Word::new(letters) }))
}

/// `ψ_l`, the inverse of `φ_l`.
pub fn psi_l(w: &Word, l: usize) -> Result<Word> {
    Ok(psi_step(w, l)?.map_or_else(|| w.clone(), |m| m.result))
}

/// `Ψ = ψ_n ... ψ_2 ψ_1`, the inverse of [`phi`] (`ψ_1` acts first).
pub fn psi(w: &Word) -> Result<Word> {
    w.ensure_pos_derangement()?;
    let mut cur = w.clone();
    for l in 1..=w.zero_count() {
        cur = psi_l(&cur, l)?;
    }
    Ok(cur)
}

/// Rule used by a canonical factorization step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThetaCase {
    /// Both neighbors of the last zero run excedent.
    Case1,
    /// Right neighbor subexcedent, left one excedent or a larger subexcedent.
    Case2,
    /// Both neighbors subexcedent, left one smaller.
    Case3,
    /// Left neighbor subexcedent, right one excedent.
    Case4,
}

/// Splitting `w' = u u'` of a left factor around its last zero run, with
/// the rearranged right factor `θ(u')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalFactorization {
    pub u: Word,
    pub u_prime: Word,
    pub theta_u_prime: Word,
    pub case: ThetaCase,
}

impl CanonicalFactorization {
    /// Checks the boundary identities between `u` and `u'`, where `x_q` is
    /// the last letter of `u`:
    /// `RISE(x_q u') = RISE•(x_q θ(u'))`, and additionally
    /// `RISE(x_q u') = RISE•(0 θ(u'))` when `x_q` is subexcedent.
    /// Returns `Ok(true)` vacuously when `u` is empty.
    pub fn boundary_identities_hold(&self, context: &Word) -> Result<bool> {
        let q = self.u.len();
        if q == 0 {
            return Ok(true);
        }
        let xq = self.u.letters()[q - 1];
        let xq_class = context.classify(q)?;
        let ranks_before = self.u.letters()[..q - 1].iter().filter(|&&x| x > 0).count();
        let rank_after = self.u.positive_count();

        let mut original = vec![xq];
        original.extend_from_slice(self.u_prime.letters());
        let lhs = rise_of(&original);

        let mut moved = vec![xq];
        moved.extend_from_slice(self.theta_u_prime.letters());
        let mut moved_classes = classes_from_rank(&[xq], ranks_before);
        moved_classes.extend(classes_from_rank(self.theta_u_prime.letters(), rank_after));
        debug_assert_eq!(moved_classes[0], xq_class);
        if lhs != rise_bullet_of(&moved, &moved_classes)? {
            return Ok(false);
        }

        if xq_class.is_subexcedent() {
            moved[0] = 0;
            moved_classes[0] = LetterClass::Zero;
            if lhs != rise_bullet_of(&moved, &moved_classes)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Canonical factorization of the left factor `w_prime` of `context`.
/// Letter classes are taken relative to `context`.
pub fn canonical_factorize(w_prime: &Word, context: &Word) -> Result<CanonicalFactorization> {
    let n_prime = w_prime.len();
    if n_prime == 0 || n_prime > context.len() || context.letters()[..n_prime] != *w_prime.letters() {
        return Err(Error::NotALeftFactor { prefix: w_prime.to_string(), context: context.to_string() });
    }
    context.ensure_pos_derangement()?;
    let letters = w_prime.letters();
    let run_end = letters.iter().rposition(|&x| x == 0).ok_or(Error::NoZero)? + 1;
    let mut j = run_end;
    while j > 1 && letters[j - 2] == 0 {
        j -= 1;
    }
    let h = run_end - j + 1;

    let classes = context.classes()[..n_prime].to_vec();
    let frame = Frame::new(letters, classes);
    let left = frame.side(j - 1).subexcedent();
    let right = frame.side(j + h).subexcedent();
    let case = match (left, right) {
        (None, None) => ThetaCase::Case1,
        (None, Some(_)) => ThetaCase::Case2,
        (Some(a), Some(b)) if a > b => ThetaCase::Case2,
        (Some(_), Some(_)) => ThetaCase::Case3,
        (Some(_), None) => ThetaCase::Case4,
    };

    // 1-based inclusive slice helper
    let seg = |from: usize, to: usize| -> &[Letter] {
        if from > to {
            &[]
        } else {
            &letters[from - 1..to]
        }
    };
    let zeros = |count: usize| std::iter::repeat_n(0, count);

    let (split, theta): (usize, Vec<Letter>) = match case {
        ThetaCase::Case1 => (j - 1, seg(j, n_prime).to_vec()),
        ThetaCase::Case2 => {
            let k = frame.increasing_sub_end(j + h, n_prime);
            let mut t = seg(j + h, k).to_vec();
            t.extend(zeros(h));
            t.extend_from_slice(seg(k + 1, n_prime));
            (j - 1, t)
        }
        ThetaCase::Case3 => {
            let i = frame.decreasing_sub_start(j - 1);
            let k = frame.increasing_sub_end(j + h, n_prime);
            let mut t = vec![0];
            t.extend_from_slice(seg(i, j - 1));
            t.extend_from_slice(seg(j + h, k));
            t.extend(zeros(h - 1));
            t.extend_from_slice(seg(k + 1, n_prime));
            (i - 1, t)
        }
        ThetaCase::Case4 => {
            let i = frame.decreasing_sub_start(j - 1);
            let mut t = vec![0];
            t.extend_from_slice(seg(i, j - 1));
            t.extend(zeros(h - 1));
            t.extend_from_slice(seg(j + h, n_prime));
            (i - 1, t)
        }
    };
    Ok(CanonicalFactorization {
        u: Word::from_slice(&letters[..split]),
        u_prime: Word::from_slice(&letters[split..]),
        theta_u_prime: Word::new(theta),
        case,
    })
}

/// The successive canonical factorizations `Θ(w), Θ(u_r), ...` until the
/// remaining left factor has no zero.
pub fn theta_chain(w: &Word) -> Result<Vec<CanonicalFactorization>> {
    w.ensure_pos_derangement()?;
    let mut left = w.clone();
    let mut chain = Vec::new();
    while left.zero_count() > 0 {
        let f = canonical_factorize(&left, w)?;
        left = f.u.clone();
        chain.push(f);
    }
    Ok(chain)
}

/// `Φ(w)` recomputed as `u_1 θ(u'_1) θ(u'_2) ... θ(u'_r)`.
pub fn phi_via_theta(w: &Word) -> Result<Word> {
    let chain = theta_chain(w)?;
    let Some(innermost) = chain.last() else {
        return Ok(w.clone());
    };
    let mut letters = innermost.u.letters().to_vec();
    for f in chain.iter().rev() {
        letters.extend_from_slice(f.theta_u_prime.letters());
    }
    Ok(Word::new(letters))
}
