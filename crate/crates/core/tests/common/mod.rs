//! Printed tables and worked examples, plus independent oracles used by the
//! integration tests and the acceptance report.

#![allow(dead_code)]

use std::collections::BTreeMap;

use fixmahon::qseries::{MultiPoly, Var};
use fixmahon::{IndexSet, Permutation, Word};

pub fn w(s: &str) -> Word {
    s.parse().expect("fixture word")
}

pub fn p(s: &str) -> Permutation {
    s.parse().expect("fixture permutation")
}

pub fn set(s: &str) -> IndexSet {
    s.parse().expect("fixture index set")
}

/// Rows `(RISE w, w, Φ(w), RISE• Φ(w))` of the printed `Sh(0² 3 1 2)`
/// table, exactly as printed. A row printed with an empty set column
/// inherits the set of the row above it.
pub const SHUFFLE_312_PRINTED: [(&str, &str, &str, &str); 10] = [
    ("{1,2,4,5}", "0 0 3 1 2", "0 0 3 1 2", "{1,2,4,5}"),
    ("{1,3,4,5}", "0 3 0 1 2", "0 3 1 2 0", "{1,3,4,5}"),
    ("{1,3,4,5}", "0 3 1 0 2", "0 3 0 1 2", "{1,3,4,5}"),
    ("{1,3,5}", "0 3 1 2 0", "0 3 1 0 2", "{1,3,5}"),
    ("{2,3,4,5}", "3 0 0 1 2", "3 1 2 0 0", "{2,3,4,5}"),
    ("{2,4,5}", "3 0 1 0 2", "3 0 0 1 2", "{2,4,5}"),
    ("{2,4,5}", "3 1 2 0 0", "3 1 0 2 0", "{2,4,5}"),
    ("{2,3,5}", "3 0 1 2 0", "3 0 1 0 2", "{2,3,5}"),
    ("{3,4,5}", "3 1 0 0 2", "3 0 1 2 0", "{3,4,5}"),
    ("{3,5}", "3 1 0 2 0", "3 1 0 0 2", "{3,5}"),
];

/// The same table with its three inconsistent entries repaired: the
/// images of `3 0 1 2 0` and `3 1 0 2 0` are interchanged in print, and
/// `0 3 1 0 2` has rise set `{1,4,5}`, not the grouped `{1,3,4,5}`. Each
/// printed entry contradicts `RISE w = RISE• Φ(w)` directly.
pub const SHUFFLE_312_CORRECTED: [(&str, &str, &str, &str); 10] = [
    ("{1,2,4,5}", "0 0 3 1 2", "0 0 3 1 2", "{1,2,4,5}"),
    ("{1,3,4,5}", "0 3 0 1 2", "0 3 1 2 0", "{1,3,4,5}"),
    ("{1,4,5}", "0 3 1 0 2", "0 3 0 1 2", "{1,4,5}"),
    ("{1,3,5}", "0 3 1 2 0", "0 3 1 0 2", "{1,3,5}"),
    ("{2,3,4,5}", "3 0 0 1 2", "3 1 2 0 0", "{2,3,4,5}"),
    ("{2,4,5}", "3 0 1 0 2", "3 0 0 1 2", "{2,4,5}"),
    ("{2,4,5}", "3 1 2 0 0", "3 1 0 2 0", "{2,4,5}"),
    ("{2,3,5}", "3 0 1 2 0", "3 1 0 0 2", "{2,3,5}"),
    ("{3,4,5}", "3 1 0 0 2", "3 0 1 2 0", "{3,4,5}"),
    ("{3,5}", "3 1 0 2 0", "3 0 1 0 2", "{3,5}"),
];

/// Rows `(maj w, w, F₃(w), mafz F₃(w))` of the printed `Sh(0² 1 2 1)`
/// table.
pub const SHUFFLE_121: [(u64, &str, &str, u64); 10] = [
    (2, "1 2 0 0 1", "0 0 1 2 1", 2),
    (3, "0 1 2 0 1", "0 1 0 2 1", 3),
    (4, "0 0 1 2 1", "1 0 0 2 1", 4),
    (4, "1 0 2 0 1", "0 1 2 0 1", 4),
    (5, "1 0 0 2 1", "1 0 2 0 1", 5),
    (5, "1 2 1 0 0", "0 1 2 1 0", 5),
    (6, "0 1 0 2 1", "1 2 0 0 1", 6),
    (6, "1 2 0 1 0", "1 0 2 1 0", 6),
    (7, "0 1 2 1 0", "1 2 0 1 0", 7),
    (8, "1 0 2 1 0", "1 2 1 0 0", 8),
];

/// The zero-moving worked example: input, then the word after each of
/// `φ₄, φ₃, φ₂, φ₁`, with the printed zero position `j`, case and pivot.
pub const ZERO_MOVE_INPUT: &str = "5 0 1 2 0 0 3 6 0 7 4";
pub const ZERO_MOVE_STEPS: [(usize, usize, u8, Option<usize>, &str); 4] = [
    (4, 9, 1, None, "5 0 1 2 0 0 3 6 0 7 4"),
    (3, 6, 2, Some(7), "5 0 1 2 0 3 0 6 0 7 4"),
    (2, 5, 3, Some(4), "5 0 1 0 2 3 0 6 0 7 4"),
    (1, 2, 2, Some(3), "5 1 0 0 2 3 0 6 0 7 4"),
];
pub const ZERO_MOVE_RISE: &str = "{2,3,5,6,7,9,11}";

/// The three printed canonical factorizations `(u, u', θ(u'), case)`,
/// outermost first, and the factored image.
pub const THETA_STEPS: [(&str, &str, &str, u8); 3] =
    [("5 0 1 2 0 0 3 6", "0 7 4", "0 7 4", 1), ("5 0 1", "2 0 0 3 6", "0 2 3 0 6", 3), ("5", "0 1", "1 0", 2)];
pub const THETA_FACTORS: [&str; 4] = ["5", "1 0", "0 2 3 0 6", "0 7 4"];

/// The `F₃` worked example: prefix length and printed image.
pub const F3_INPUT: &str = "0 0 0 3 1 2 2 0 0 1 3";
pub const F3_STEPS: [(usize, &str); 7] = [
    (4, "0 0 0 3"),
    (5, "3 0 0 0 1"),
    (7, "3 0 0 0 1 2 2"),
    (8, "3 1 0 0 0 2 2 0"),
    (9, "0 3 1 0 0 0 2 2 0"),
    (10, "0 0 3 1 0 0 0 2 2 1"),
    (11, "0 0 3 1 0 0 0 2 2 1 3"),
];
pub const F3_MAJ: u64 = 11;

/// `(σ, w, w', σ', RISE σ')` for the fifteen non-derangements of order 4.
pub const S4_PHI: [(&str, &str, &str, &str, &str); 15] = [
    ("1 2 3 4", "0 0 0 0", "0 0 0 0", "1 2 3 4", "{1,2,3,4}"),
    ("1 2 4 3", "0 0 2 1", "0 0 2 1", "1 2 4 3", "{1,2,4}"),
    ("1 3 2 4", "0 2 1 0", "0 2 0 1", "1 4 3 2", "{1,4}"),
    ("1 4 3 2", "0 2 0 1", "0 2 1 0", "1 3 2 4", "{1,3,4}"),
    ("2 1 3 4", "2 1 0 0", "2 0 1 0", "3 2 1 4", "{3,4}"),
    ("3 2 1 4", "2 0 1 0", "2 0 0 1", "4 2 3 1", "{2,4}"),
    ("4 2 3 1", "2 0 0 1", "2 1 0 0", "2 1 3 4", "{2,3,4}"),
    ("1 3 4 2", "0 2 3 1", "0 2 3 1", "1 3 4 2", "{1,2,4}"),
    ("2 3 1 4", "2 3 1 0", "2 3 0 1", "2 4 3 1", "{1,4}"),
    ("2 4 3 1", "2 3 0 1", "2 3 1 0", "2 3 1 4", "{1,3,4}"),
    ("3 2 4 1", "2 0 3 1", "2 0 3 1", "3 2 4 1", "{2,4}"),
    ("1 4 2 3", "0 3 1 2", "0 3 1 2", "1 4 2 3", "{1,3,4}"),
    ("3 1 2 4", "3 1 2 0", "3 1 0 2", "4 1 3 2", "{2,4}"),
    ("4 1 3 2", "3 1 0 2", "3 0 1 2", "4 2 1 3", "{3,4}"),
    ("4 2 1 3", "3 0 1 2", "3 1 2 0", "3 1 2 4", "{2,3,4}"),
];

/// `(σ, w, w'', maz σ, maf σ'')` for the fifteen non-derangements of order
/// 4. The printed `σ''` column is not used: it disagrees with its own `w''`
/// on the rows of `4 1 3 2` and `4 2 1 3`.
pub const S4_F3: [(&str, &str, &str, u64, u64); 15] = [
    ("1 2 3 4", "0 0 0 0", "0 0 0 0", 0, 0),
    ("1 2 4 3", "0 0 2 1", "2 0 0 1", 3, 3),
    ("1 3 2 4", "0 2 1 0", "2 1 0 0", 5, 5),
    ("1 4 3 2", "0 2 0 1", "0 2 0 1", 2, 2),
    ("2 1 3 4", "2 1 0 0", "0 2 1 0", 3, 3),
    ("3 2 1 4", "2 0 1 0", "2 0 1 0", 4, 4),
    ("4 2 3 1", "2 0 0 1", "0 0 2 1", 1, 1),
    ("1 3 4 2", "0 2 3 1", "2 0 3 1", 3, 3),
    ("2 3 1 4", "2 3 1 0", "2 3 1 0", 5, 5),
    ("2 4 3 1", "2 3 0 1", "0 2 3 1", 2, 2),
    ("3 2 4 1", "2 0 3 1", "2 3 0 1", 4, 4),
    ("1 4 2 3", "0 3 1 2", "3 0 1 2", 2, 2),
    ("3 1 2 4", "3 1 2 0", "3 1 2 0", 4, 4),
    ("4 1 3 2", "3 1 0 2", "3 1 0 2", 3, 3),
    ("4 2 1 3", "3 0 1 2", "0 3 1 2", 1, 1),
];

// ---------------------------------------------------------------------------
// Oracles: direct transcriptions of the definitions, sharing no code with
// the library.

pub fn oracle_des(x: &[u32]) -> Vec<usize> {
    (1..x.len()).filter(|&i| x[i - 1] > x[i]).collect()
}

pub fn oracle_maj(x: &[u32]) -> u64 {
    oracle_des(x).iter().map(|&i| i as u64).sum()
}

/// Statistics `(fix, des, exc, maj)` of a permutation in one-line form.
pub fn oracle_perm_stats(sigma: &[u32]) -> (u32, u32, u32, u32) {
    let n = sigma.len();
    let fix = (0..n).filter(|&i| sigma[i] as usize == i + 1).count() as u32;
    let exc = (0..n).filter(|&i| sigma[i] as usize > i + 1).count() as u32;
    let des = oracle_des(sigma);
    (fix, des.len() as u32, exc, des.iter().sum::<usize>() as u32)
}

/// All permutations of `1..=n` by Heap's algorithm, unordered.
pub fn oracle_permutations(n: usize) -> Vec<Vec<u32>> {
    fn heap(k: usize, a: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        heap(k - 1, a, out);
    }
    let mut a: Vec<u32> = (1..=n as u32).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

/// Generating polynomial of `(fix, des or exc, maj)` with a plain counter.
pub fn oracle_distribution(n: usize, with_exc: bool) -> MultiPoly {
    let mut counts: BTreeMap<(u32, u32, u32), i64> = BTreeMap::new();
    for sigma in oracle_permutations(n) {
        let (fix, des, exc, maj) = oracle_perm_stats(&sigma);
        *counts.entry((fix, if with_exc { exc } else { des }, maj)).or_default() += 1;
    }
    let middle = if with_exc { Var::S } else { Var::T };
    counts.into_iter().fold(MultiPoly::zero(), |acc, ((f, m, q), c)| {
        acc.add(&MultiPoly::monomial(c, &[(Var::Y, f), (middle, m), (Var::Q, q)])).unwrap()
    })
}

/// Gaussian binomial as the inversion generating function of 0/1 words
/// with `k` ones.
pub fn oracle_qbinom(n: u32, k: u32) -> MultiPoly {
    let mut counts: BTreeMap<u32, i64> = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != k {
            continue;
        }
        let bits: Vec<u32> = (0..n).map(|i| (mask >> (n - 1 - i)) & 1).collect();
        let mut inv = 0;
        for i in 0..bits.len() {
            for j in i + 1..bits.len() {
                if bits[i] > bits[j] {
                    inv += 1;
                }
            }
        }
        *counts.entry(inv).or_default() += 1;
    }
    counts.into_iter().fold(MultiPoly::zero(), |acc, (e, c)| acc.add(&MultiPoly::monomial(c, &[(Var::Q, e)])).unwrap())
}

// ---------------------------------------------------------------------------
// Algebraic laws of truncated series at a fixed seed.

use fixmahon::qseries::SeriesCaps;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SERIES_SEED: u64 = 0x5eed_f1c5;

pub fn random_poly(rng: &mut ChaCha8Rng, terms: usize, max_exp: u32) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for _ in 0..terms {
        let e = [
            rng.gen_range(0..=max_exp),
            rng.gen_range(0..=max_exp),
            rng.gen_range(0..=1),
            rng.gen_range(0..=max_exp),
            rng.gen_range(0..=max_exp),
        ];
        let c = rng.gen_range(-9..=9);
        p = p.add(&MultiPoly::from_terms([(e, c)]).unwrap()).unwrap();
    }
    p
}

/// Unit of the capped ring: constant term 1 and every other term carrying
/// `u`, `t` or `s`.
pub fn random_unit(rng: &mut ChaCha8Rng, caps: SeriesCaps) -> MultiPoly {
    let mut p = MultiPoly::one().truncated(caps);
    for _ in 0..5 {
        let mut e = [0, 0, 0, rng.gen_range(0..=3), rng.gen_range(0..=2)];
        e[rng.gen_range(0..3)] = rng.gen_range(1..=2);
        let c = rng.gen_range(-4..=4);
        p = p.add(&MultiPoly::from_terms([(e, c)]).unwrap()).unwrap();
    }
    p
}

/// Ring laws, truncation as a homomorphism, and `inv(x)·x = 1`, over
/// `rounds` random draws. Returns a description of the first violation.
pub fn check_series_laws(rounds: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SERIES_SEED);
    let caps = SeriesCaps::new(3, 3);
    for round in 0..rounds {
        let a = random_poly(&mut rng, 6, 3);
        let b = random_poly(&mut rng, 6, 3);
        let c = random_poly(&mut rng, 6, 3);
        let ab = a.mul(&b).unwrap();
        let laws = [
            ("a+b = b+a", a.add(&b).unwrap() == b.add(&a).unwrap()),
            ("ab = ba", ab == b.mul(&a).unwrap()),
            ("(ab)c = a(bc)", ab.mul(&c).unwrap() == a.mul(&b.mul(&c).unwrap()).unwrap()),
            ("a(b+c) = ab+ac", a.mul(&b.add(&c).unwrap()).unwrap() == ab.add(&a.mul(&c).unwrap()).unwrap()),
            ("a-a = 0", a.sub(&a).unwrap().is_zero()),
            ("1a = a", MultiPoly::one().mul(&a).unwrap() == a),
            (
                "trunc(ab) = trunc(trunc a · trunc b)",
                ab.truncated(caps) == a.truncated(caps).mul(&b.truncated(caps)).unwrap(),
            ),
            (
                "trunc(a+b) = trunc a + trunc b",
                a.add(&b).unwrap().truncated(caps) == a.truncated(caps).add(&b.truncated(caps)).unwrap(),
            ),
        ];
        if let Some((law, _)) = laws.iter().find(|(_, ok)| !ok) {
            return Err(format!("round {round}: {law} fails for a = {a}, b = {b}, c = {c}"));
        }
        let x = random_unit(&mut rng, caps);
        let inv = x.inverse().map_err(|e| format!("round {round}: inverse of {x}: {e}"))?;
        let one = MultiPoly::one().truncated(caps);
        if inv.mul(&x).unwrap() != one || x.mul(&inv).unwrap() != one {
            return Err(format!("round {round}: inv(x)·x ≠ 1 for x = {x}"));
        }
    }
    Ok(())
}
