//! Exact truncated power series in `u, t, s, q, Y`, q-analogues, and the
//! numerical checks of the two generating-function identities for the
//! joint distributions of `(fix, des, maj)` and `(fix, exc, maj)`.

mod poly;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::enumeration::{check_cap, joint_distribution, Stat};
use crate::error::Result;
use crate::report::{Counterexample, VerificationReport};

pub use poly::{Exponents, MultiPoly, SeriesCaps, Var};

/// Largest `n` for which distribution polynomials are brute-forced unless
/// overridden.
pub const DEFAULT_SERIES_CAP: usize = 8;

/// `(arg; q)_k = Π_{i<k} (1 − arg·q^i)`. Caps carried by `arg` apply.
pub fn qpoch(arg: &MultiPoly, k: u32) -> Result<MultiPoly> {
    let one = match arg.caps() {
        Some(caps) => MultiPoly::one().truncated(caps),
        None => MultiPoly::one(),
    };
    let mut acc = one.clone();
    let mut shifted = arg.clone();
    let q = MultiPoly::var(Var::Q);
    for _ in 0..k {
        acc = acc.mul(&one.sub(&shifted)?)?;
        shifted = shifted.mul(&q)?;
    }
    Ok(acc)
}

/// `[k]_q = 1 + q + ... + q^{k-1}`.
pub fn q_integer(k: u32) -> MultiPoly {
    (0..k)
        .fold(MultiPoly::zero(), |acc, i| acc.add(&MultiPoly::monomial(1, &[(Var::Q, i)])).expect("unit coefficients"))
}

/// Gaussian binomial coefficient via `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
/// Zero when `k > n`.
pub fn qbinom(n: u32, k: u32) -> MultiPoly {
    if k > n {
        return MultiPoly::zero();
    }
    let mut row = vec![MultiPoly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m as usize + 1);
        for j in 0..=m {
            let left = if j > 0 { row[j as usize - 1].clone() } else { MultiPoly::zero() };
            let right = match row.get(j as usize) {
                Some(p) => p.mul(&MultiPoly::monomial(1, &[(Var::Q, j)])).expect("no overflow below u64 range"),
                None => MultiPoly::zero(),
            };
            next.push(left.add(&right).expect("no overflow below u64 range"));
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// `Σ_{σ ∈ S_n} Y^fix t^des q^maj`, by enumeration.
pub fn brute_a_fix_des_maj(n: usize, cap: usize) -> Result<MultiPoly> {
    distribution_poly(n, cap, [Stat::Fix, Stat::Des, Stat::Maj], [Var::Y, Var::T, Var::Q])
}

/// `Σ_{σ ∈ S_n} Y^fix s^exc q^maj`, by enumeration.
pub fn brute_a_fix_exc_maj(n: usize, cap: usize) -> Result<MultiPoly> {
    distribution_poly(n, cap, [Stat::Fix, Stat::Exc, Stat::Maj], [Var::Y, Var::S, Var::Q])
}

/// `Σ_{σ ∈ S_n} Y^fix t^dez q^maz`, by enumeration.
pub fn brute_a_fix_dez_maz(n: usize, cap: usize) -> Result<MultiPoly> {
    distribution_poly(n, cap, [Stat::Fix, Stat::Dez, Stat::Maz], [Var::Y, Var::T, Var::Q])
}

fn distribution_poly(n: usize, cap: usize, stats: [Stat; 3], vars: [Var; 3]) -> Result<MultiPoly> {
    check_cap(n, cap)?;
    joint_distribution(n, &stats, cap)?.to_poly(&vars)
}

fn polys_up_to(max_n: usize, cap: usize, f: fn(usize, usize) -> Result<MultiPoly>) -> Result<Vec<MultiPoly>> {
    check_cap(max_n, cap)?;
    (0..=max_n).into_par_iter().map(|n| f(n, cap)).collect()
}

/// Checks, for every `n <= max_n`,
/// `Σ_k qbinom(n,k)·A_k(Y,s,q)·((sq)^{n−k} − sq) = (1 − sq)·Y^n`,
/// the coefficient form of the exponential identity for `(fix, exc, maj)`
/// after clearing its denominator.
pub fn verify_identity_127(max_n: usize, cap: usize) -> Result<VerificationReport> {
    let claim = "id-1.27";
    let range = format!("n = 0..={max_n}");
    let a = polys_up_to(max_n, cap, brute_a_fix_exc_maj)?;
    let sq = MultiPoly::monomial(1, &[(Var::S, 1), (Var::Q, 1)]);
    let one_minus_sq = MultiPoly::one().sub(&sq)?;
    let outcomes: Vec<Result<Option<Counterexample>>> = (0..=max_n)
        .into_par_iter()
        .map(|n| {
            let mut lhs = MultiPoly::zero();
            for (k, a_k) in a.iter().enumerate().take(n + 1) {
                let factor = sq.pow((n - k) as u32)?.sub(&sq)?;
                lhs = lhs.add(&qbinom(n as u32, k as u32).mul(a_k)?.mul(&factor)?)?;
            }
            let rhs = one_minus_sq.mul(&MultiPoly::monomial(1, &[(Var::Y, n as u32)]))?;
            Ok((lhs != rhs).then(|| Counterexample::new(format!("n = {n}"), rhs, lhs)))
        })
        .collect();
    let mut checked = 0;
    for outcome in outcomes {
        checked += 1;
        if let Some(cx) = outcome? {
            return Ok(VerificationReport::fail(claim, range, checked, cx));
        }
    }
    Ok(VerificationReport::pass(claim, range, checked))
}

/// Both sides of the `(fix, des, maj)` identity as series truncated at
/// `u^max_u` and `t^max_t`.
pub fn identity_126_sides(max_u: usize, max_t: usize, cap: usize) -> Result<(MultiPoly, MultiPoly)> {
    let caps = SeriesCaps::new(max_u as u32, max_t as u32);
    let a = polys_up_to(max_u, cap, brute_a_fix_des_maj)?;
    let t = MultiPoly::var(Var::T).truncated(caps);
    let u = MultiPoly::var(Var::U).truncated(caps);
    let uy = MultiPoly::monomial(1, &[(Var::U, 1), (Var::Y, 1)]).truncated(caps);
    let one = MultiPoly::one().truncated(caps);

    let lhs_terms: Vec<MultiPoly> = a
        .par_iter()
        .enumerate()
        .map(|(n, a_n)| {
            let weight = a_n.truncated(caps).mul(&u.pow(n as u32)?)?;
            weight.mul(&qpoch(&t, n as u32 + 1)?.inverse()?)
        })
        .collect::<Result<_>>()?;
    let rhs_terms: Vec<MultiPoly> = (0..=max_t as u32)
        .into_par_iter()
        .map(|r| {
            let geometric = one.sub(&u.mul(&q_integer(r + 1))?)?.inverse()?;
            let ratio = qpoch(&u, r + 1)?.mul(&qpoch(&uy, r + 1)?.inverse()?)?;
            t.pow(r)?.mul(&geometric)?.mul(&ratio)
        })
        .collect::<Result<_>>()?;
    let sum = |terms: Vec<MultiPoly>| terms.iter().try_fold(MultiPoly::zero().truncated(caps), |acc, p| acc.add(p));
    Ok((sum(lhs_terms)?, sum(rhs_terms)?))
}

/// Compares every coefficient of both sides of the `(fix, des, maj)`
/// identity with `u`-degree at most `max_u` and `t`-degree at most `max_t`.
pub fn verify_identity_126(max_u: usize, max_t: usize, cap: usize) -> Result<VerificationReport> {
    let claim = "id-1.26";
    let range = format!("u^0..u^{max_u}, t^0..t^{max_t}");
    let (lhs, rhs) = identity_126_sides(max_u, max_t, cap)?;
    let mut monomials: Vec<Exponents> = lhs.terms().chain(rhs.terms()).map(|(e, _)| *e).collect();
    monomials.sort_unstable();
    monomials.dedup();
    let lhs_map: BTreeMap<Exponents, i64> = lhs.terms().map(|(e, c)| (*e, *c)).collect();
    let rhs_map: BTreeMap<Exponents, i64> = rhs.terms().map(|(e, c)| (*e, *c)).collect();
    for (idx, e) in monomials.iter().enumerate() {
        let l = lhs_map.get(e).copied().unwrap_or(0);
        let r = rhs_map.get(e).copied().unwrap_or(0);
        if l != r {
            let mono = MultiPoly::from_terms([(*e, 1)])?;
            return Ok(VerificationReport::fail(
                claim,
                range,
                idx as u64 + 1,
                Counterexample::new(format!("coefficient of {mono}"), l, r),
            ));
        }
    }
    Ok(VerificationReport::pass(claim, range, monomials.len() as u64))
}
