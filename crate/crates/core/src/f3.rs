//! The recursive bijection `F₃` on words with nonnegative letters, which
//! carries `maj` to `mafz` while keeping the last letter and the shuffle
//! class fixed.
//!
//! Both directions are computed iteratively. The forward map processes the
//! word left to right, keeping the image of the current prefix; the inverse
//! peels letters off the right end.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// `w = w' a 0^r b`: `a` is the last positive letter among the first `n - 1`
/// letters, `b` the last letter and `c` the first one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailDecomposition {
    pub prefix: Word,
    /// Absent when the first `n - 1` letters are all zero.
    pub a: Option<Letter>,
    pub r: usize,
    pub b: Letter,
    pub c: Letter,
}

impl TailDecomposition {
    /// `None` for the empty word.
    pub fn of(w: &Word) -> Option<Self> {
        let letters = w.letters();
        let (&b, head) = letters.split_last()?;
        let c = letters[0];
        match head.iter().rposition(|&x| x > 0) {
            Some(pa) => Some(TailDecomposition {
                prefix: Word::from_slice(&head[..pa]),
                a: Some(head[pa]),
                r: head.len() - pa - 1,
                b,
                c,
            }),
            None => Some(TailDecomposition { prefix: Word::default(), a: None, r: head.len(), b, c }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum F3Case {
    /// No positive letter before the last one: the prefix is fixed.
    Degenerate,
    /// `a <= b`: append `b`.
    Case1,
    /// `a > b`, `r >= 1`: apply `γ`, then append `b`.
    Case2,
    /// `a > b`, `r = 0`: apply `δ`, then append `b`.
    Case3,
}

/// Image of the prefix of length `len` and the rule that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct F3Step {
    pub len: usize,
    pub case: F3Case,
    pub image: Word,
}

/// Drops the trailing 0 and prepends a 0.
pub fn gamma(w: &Word) -> Result<Word> {
    match w.letters().split_last() {
        Some((0, rest)) => {
            let mut out = Vec::with_capacity(w.len());
            out.push(0);
            out.extend_from_slice(rest);
            Ok(Word::new(out))
        }
        _ => Err(Error::LastLetterNotZero),
    }
}

/// Drops the leading 0 and appends a 0.
pub fn gamma_inv(w: &Word) -> Result<Word> {
    match w.letters().split_first() {
        Some((0, rest)) => {
            let mut out = rest.to_vec();
            out.push(0);
            Ok(Word::new(out))
        }
        _ => Err(Error::FirstLetterNotZero),
    }
}

/// Moves the positive letter following each maximal zero factor to the
/// front of that factor.
pub fn delta(w: &Word) -> Result<Word> {
    let x = w.letters();
    let all_zero = x.iter().all(|&c| c == 0);
    if x.last() == Some(&0) && !all_zero {
        return Err(Error::TrailingZero);
    }
    if all_zero {
        return Ok(w.clone());
    }
    let mut out = Vec::with_capacity(x.len());
    let mut i = 0;
    while i < x.len() {
        if x[i] == 0 {
            let run_start = i;
            while x[i] == 0 {
                i += 1;
            }
            out.push(x[i]);
            out.extend(std::iter::repeat_n(0, i - run_start));
        } else {
            out.push(x[i]);
        }
        i += 1;
    }
    Ok(Word::new(out))
}

/// Moves the positive letter preceding each maximal zero factor to the end
/// of that factor.
pub fn delta_inv(w: &Word) -> Result<Word> {
    let x = w.letters();
    let all_zero = x.iter().all(|&c| c == 0);
    if x.first() == Some(&0) && !all_zero {
        return Err(Error::LeadingZero);
    }
    if all_zero {
        return Ok(w.clone());
    }
    let mut out = Vec::with_capacity(x.len());
    let mut i = 0;
    while i < x.len() {
        let letter = x[i];
        i += 1;
        if i < x.len() && x[i] == 0 {
            while i < x.len() && x[i] == 0 {
                out.push(0);
                i += 1;
            }
        }
        out.push(letter);
    }
    Ok(Word::new(out))
}

/// `F₃(w)`.
pub fn f3(w: &Word) -> Word {
    f3_trace(w).pop().map_or_else(|| w.clone(), |s| s.image)
}

/// Images of every prefix of length `2..=n` with the rule used at each
/// length. Empty for words of length at most 1.
pub fn f3_trace(w: &Word) -> Vec<F3Step> {
    let x = w.letters();
    let mut steps = Vec::with_capacity(x.len().saturating_sub(1));
    let Some(&first) = x.first() else {
        return steps;
    };
    let mut image = Word::new(vec![first]);
    for len in 2..=x.len() {
        let b = x[len - 1];
        let head = &x[..len - 1];
        let case = match head.iter().rposition(|&c| c > 0) {
            None => F3Case::Degenerate,
            Some(pa) if head[pa] <= b => F3Case::Case1,
            Some(pa) if pa + 1 < head.len() => F3Case::Case2,
            Some(_) => F3Case::Case3,
        };
        image = match case {
            F3Case::Degenerate | F3Case::Case1 => image,
            F3Case::Case2 => gamma(&image).expect("image of a prefix ending in 0 ends in 0"),
            F3Case::Case3 => delta(&image).expect("image of a prefix ending in a > 0 ends in a"),
        };
        let mut letters = image.into_letters();
        letters.push(b);
        image = Word::new(letters);
        steps.push(F3Step { len, case, image: image.clone() });
    }
    steps
}

/// `F₃⁻¹(w)`. The case is read from the image: `a <= b` undoes case 1, a
/// leading 0 undoes case 2 and a leading positive letter undoes case 3.
pub fn f3_inv(w: &Word) -> Word {
    let mut cur = w.letters().to_vec();
    let mut tail = Vec::new();
    while cur.len() > 1 {
        let b = cur[cur.len() - 1];
        let head = Word::from_slice(&cur[..cur.len() - 1]);
        let Some(a) = head.letters().iter().rev().copied().find(|&c| c > 0) else {
            break;
        };
        let prev = if a <= b {
            head
        } else if head.letters()[0] == 0 {
            gamma_inv(&head).expect("leading zero checked")
        } else {
            delta_inv(&head).expect("leading positive letter checked")
        };
        tail.push(b);
        cur = prev.into_letters();
    }
    cur.extend(tail.into_iter().rev());
    Word::new(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_moves() {
        assert_eq!(gamma(&w("3 1 0 0 0 2 2 0")).unwrap(), w("0 3 1 0 0 0 2 2"));
        assert_eq!(gamma(&w("0 3 1 0 0 0 2 2 0")).unwrap(), w("0 0 3 1 0 0 0 2 2"));
        assert_eq!(gamma(&w("0 0")).unwrap(), w("0 0"));
        assert_eq!(gamma(&w("0 1")), Err(Error::LastLetterNotZero));
        assert_eq!(gamma(&Word::default()), Err(Error::LastLetterNotZero));
        assert_eq!(gamma_inv(&w("0 3 1 0 0 0 2 2")).unwrap(), w("3 1 0 0 0 2 2 0"));
        assert_eq!(gamma_inv(&w("0 0")).unwrap(), w("0 0"));
        assert_eq!(gamma_inv(&w("0 1")).unwrap(), w("1 0"));
        assert_eq!(gamma_inv(&w("1 0")), Err(Error::FirstLetterNotZero));
    }

    #[test]
    fn delta_moves() {
        assert_eq!(delta(&w("0 0 0 3")).unwrap(), w("3 0 0 0"));
        assert_eq!(delta(&w("3 0 0 0 1 2 2")).unwrap(), w("3 1 0 0 0 2 2"));
        assert_eq!(delta(&w("1 2 3")).unwrap(), w("1 2 3"));
        assert_eq!(delta(&w("0 0")).unwrap(), w("0 0"));
        assert_eq!(delta(&w("1 0")), Err(Error::TrailingZero));
        assert_eq!(delta_inv(&w("3 0 0 0")).unwrap(), w("0 0 0 3"));
        assert_eq!(delta_inv(&w("3 1 0 0 0 2 2")).unwrap(), w("3 0 0 0 1 2 2"));
        assert_eq!(delta_inv(&w("1 2 3")).unwrap(), w("1 2 3"));
        assert_eq!(delta_inv(&w("0 1")), Err(Error::LeadingZero));
        assert_eq!(delta_inv(&w("0 0 0")).unwrap(), w("0 0 0"));
    }

    #[test]
    fn forward_examples() {
        assert_eq!(f3(&w("0 0 0 3 1 2 2 0 0 1 3")), w("0 0 3 1 0 0 0 2 2 1 3"));
        assert_eq!(f3(&w("1 2 0 0 1")), w("0 0 1 2 1"));
        assert_eq!(f3(&w("0 0 0 0")), w("0 0 0 0"));
        assert_eq!(f3(&w("7")), w("7"));
        assert_eq!(f3(&Word::default()), Word::default());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(f3_inv(&w("0 0 1 2 1")), w("1 2 0 0 1"));
        assert_eq!(f3_inv(&w("0 0 3 1 0 0 0 2 2 1 3")), w("0 0 0 3 1 2 2 0 0 1 3"));
        assert_eq!(f3_inv(&w("0 0 0 0")), w("0 0 0 0"));
    }

    #[test]
    fn tail_decomposition() {
        let d = TailDecomposition::of(&w("4 0 0 3 1 0 0 2")).unwrap();
        assert_eq!((d.prefix, d.a, d.r, d.b, d.c), (w("4 0 0 3"), Some(1), 2, 2, 4));
        let d = TailDecomposition::of(&w("0 0 5")).unwrap();
        assert_eq!((d.a, d.r, d.b), (None, 2, 5));
        assert!(TailDecomposition::of(&Word::default()).is_none());
    }
}
