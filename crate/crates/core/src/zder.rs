//! Permutations, the `ZDer` encoding into shuffle-class words, permutation
//! statistics, and the two bijections of `S_n` induced by `Φ` and `F₃`.
//!
//! `ZDer(σ)` replaces each fixed point by 0 and each other value by its
//! rank among the non-fixed values. Its positive subword `Der σ` is a
//! derangement.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::f3::{f3, f3_inv};
use crate::phi::{phi, psi};
use crate::word::{parse_letters, IndexSet, Letter, Word};

/// One-line notation `σ(1) σ(2) ... σ(n)` of a bijection of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotAPermutation { values: Word::new(values).to_string() });
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// `σ(i)` for 1-based `i`.
    pub fn value(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn as_word(&self) -> Word {
        Word::from_slice(&self.0)
    }

    pub fn fix_set(&self) -> IndexSet {
        IndexSet::from_positions(self.0.iter().enumerate().filter(|&(i, &v)| v as usize == i + 1).map(|(i, _)| i + 1))
    }

    pub fn fix(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &v)| v as usize == i + 1).count()
    }

    pub fn is_derangement(&self) -> bool {
        self.fix() == 0
    }

    /// Number of `i` in `1..=n-1` with `σ(i) > i`.
    pub fn exc(&self) -> usize {
        let n = self.0.len();
        (1..n).filter(|&i| self.value(i) as usize > i).count()
    }

    pub fn des_set(&self) -> IndexSet {
        self.as_word().des_set()
    }

    pub fn rise_set(&self) -> IndexSet {
        self.as_word().rise_set()
    }

    pub fn maj(&self) -> u64 {
        self.des_set().sum()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&Word::from_slice(&self.0), f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_letters(s)?)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter())
    }
}

/// Statistics of a permutation, both classical and zero-encoded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatVector {
    pub fix: usize,
    pub des: usize,
    pub exc: usize,
    pub maj: u64,
    pub dez: usize,
    pub maz: u64,
    pub maf: u64,
    #[serde(rename = "FIX")]
    pub fix_set: IndexSet,
    #[serde(rename = "DES")]
    pub des_set: IndexSet,
    #[serde(rename = "DEZ")]
    pub dez_set: IndexSet,
    #[serde(rename = "RISE")]
    pub rise_set: IndexSet,
    #[serde(rename = "RIZE")]
    pub rize_set: IndexSet,
}

/// `ZDer(σ)`: fixed points become 0, other values their reduced rank.
pub fn zder(sigma: &Permutation) -> Word {
    let n = sigma.len();
    // rank of each moved value among moved values; moved positions and
    // moved values are the same set
    let mut rank = vec![0 as Letter; n + 1];
    let mut next = 0;
    for (i, r) in rank.iter_mut().enumerate().skip(1) {
        if sigma.value(i) as usize != i {
            next += 1;
            *r = next;
        }
    }
    Word::new(
        (1..=n)
            .map(|i| {
                let v = sigma.value(i) as usize;
                if v == i {
                    0
                } else {
                    rank[v]
                }
            })
            .collect(),
    )
}

/// Inverse of [`zder`] on words whose positive subword is a derangement.
pub fn zder_inv(w: &Word) -> Result<Permutation> {
    if !w.pos_subword().is_derangement() {
        return Err(Error::NotInSnDer { word: w.to_string() });
    }
    let moved: Vec<usize> = w.letters().iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i + 1).collect();
    let values = w
        .letters()
        .iter()
        .enumerate()
        .map(|(i, &x)| if x == 0 { (i + 1) as u32 } else { moved[x as usize - 1] as u32 })
        .collect();
    Ok(Permutation(values))
}

/// `Der σ`, the reduced derangement of the non-fixed values.
pub fn der(sigma: &Permutation) -> Word {
    zder(sigma).pos_subword()
}

/// `maf` from fixed points directly: shifted sum of fixed points plus the
/// major index of `Der σ`.
pub fn maf_direct(sigma: &Permutation) -> u64 {
    let fixed = sigma.fix_set();
    let f = fixed.len() as u64;
    fixed.sum() - f * (f + 1) / 2 + der(sigma).maj()
}

pub fn perm_stats(sigma: &Permutation) -> StatVector {
    let z = zder(sigma);
    let des_set = sigma.des_set();
    let dez_set = z.des_set();
    let stats = StatVector {
        fix: sigma.fix(),
        des: des_set.len(),
        exc: sigma.exc(),
        maj: des_set.sum(),
        dez: dez_set.len(),
        maz: dez_set.sum(),
        maf: z.mafz(),
        fix_set: sigma.fix_set(),
        des_set,
        dez_set,
        rise_set: sigma.rise_set(),
        rize_set: z.rise_set(),
    };
    debug_assert_eq!(stats.maf, maf_direct(sigma));
    stats
}

fn through_zder(sigma: &Permutation, map: impl FnOnce(&Word) -> Result<Word>) -> Permutation {
    let image = map(&zder(sigma)).expect("ZDer images lie in the derangement domain");
    zder_inv(&image).expect("word maps preserve the positive subword")
}

/// `σ ↦ ZDer⁻¹(Φ(ZDer σ))`.
pub fn phi_perm(sigma: &Permutation) -> Permutation {
    through_zder(sigma, phi)
}

/// `σ ↦ ZDer⁻¹(Ψ(ZDer σ))`, the inverse of [`phi_perm`].
pub fn psi_perm(sigma: &Permutation) -> Permutation {
    through_zder(sigma, psi)
}

/// `σ ↦ ZDer⁻¹(F₃(ZDer σ))`.
pub fn f3_perm(sigma: &Permutation) -> Permutation {
    through_zder(sigma, |w| Ok(f3(w)))
}

pub fn f3_inv_perm(sigma: &Permutation) -> Permutation {
    through_zder(sigma, |w| Ok(f3_inv(w)))
}

/// `F₃ ∘ Φ⁻¹` on permutations; carries `(fix, maj, Der)` to `(fix, maf, Der)`.
pub fn f3_phi_inv_perm(sigma: &Permutation) -> Permutation {
    f3_perm(&psi_perm(sigma))
}
