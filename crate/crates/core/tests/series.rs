//! Truncated-series arithmetic against independent oracles.

mod common;

use common::*;
use fixmahon::enumeration::{binomial, factorial};
use fixmahon::qseries::{
    brute_a_fix_des_maj, brute_a_fix_dez_maz, brute_a_fix_exc_maj, identity_126_sides, qbinom, qpoch,
    verify_identity_126, verify_identity_127, MultiPoly, SeriesCaps, Var,
};
use fixmahon::Error;

#[test]
fn ring_laws_and_inversion_at_fixed_seed() {
    check_series_laws(300).unwrap();
}

#[test]
fn gaussian_binomials_match_inversion_counts() {
    for n in 0..=10 {
        for k in 0..=n {
            let g = qbinom(n, k);
            assert_eq!(g, oracle_qbinom(n, k), "[{n},{k}]");
            assert_eq!(g, qbinom(n, n - k));
            assert_eq!(g.evaluate([1; 5]).unwrap() as u64, binomial(n as u64, k as u64));
        }
    }
}

#[test]
fn distribution_polynomials_match_plain_counts() {
    for n in 0..=7 {
        let des = brute_a_fix_des_maj(n, 8).unwrap();
        let exc = brute_a_fix_exc_maj(n, 8).unwrap();
        assert_eq!(des, oracle_distribution(n, false), "n = {n}");
        assert_eq!(exc, oracle_distribution(n, true), "n = {n}");
        assert_eq!(brute_a_fix_dez_maz(n, 8).unwrap(), des, "n = {n}");
        let f = factorial(n as u64) as i64;
        assert_eq!(des.evaluate([1; 5]).unwrap(), f);
        assert_eq!(exc.evaluate([1; 5]).unwrap(), f);
    }
}

#[test]
fn small_distribution_polynomials() {
    assert_eq!(brute_a_fix_exc_maj(2, 8).unwrap().to_string(), "Y^2 + s*q");
    assert_eq!(brute_a_fix_des_maj(1, 8).unwrap().to_string(), "Y");
    assert_eq!(brute_a_fix_des_maj(0, 8).unwrap(), MultiPoly::one());
}

#[test]
fn pochhammer_expansions() {
    assert_eq!(qpoch(&MultiPoly::var(Var::T), 2).unwrap().to_string(), "1 - t - t*q + t^2*q");
    // (q;q)_n / ((q;q)_k (q;q)_{n-k}) = [n,k] after clearing denominators
    let q = MultiPoly::var(Var::Q);
    for n in 0..=6u32 {
        for k in 0..=n {
            let lhs = qpoch(&q, n).unwrap();
            let rhs = qbinom(n, k).mul(&qpoch(&q, k).unwrap()).unwrap().mul(&qpoch(&q, n - k).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "[{n},{k}]");
        }
    }
}

#[test]
fn identities_hold() {
    let r = verify_identity_127(6, 8).unwrap();
    assert!(r.passed, "{r}");
    let r = verify_identity_126(4, 4, 8).unwrap();
    assert!(r.passed, "{r}");
}

#[test]
fn series_identity_low_order_terms() {
    let (lhs, rhs) = identity_126_sides(2, 2, 8).unwrap();
    for side in [&lhs, &rhs] {
        assert_eq!(side.coeff(&[]), 1);
        assert_eq!(side.coeff(&[(Var::U, 1), (Var::Y, 1)]), 1);
        assert_eq!(side.caps(), Some(SeriesCaps::new(2, 2)));
    }
}

#[test]
fn caps_and_units_are_enforced() {
    assert_eq!(verify_identity_127(9, 8).unwrap_err(), Error::CapExceeded { n: 9, cap: 8 });
    let caps = SeriesCaps::new(2, 2);
    let non_unit = MultiPoly::one().sub(&MultiPoly::monomial(1, &[(Var::S, 1), (Var::Q, 1)])).unwrap();
    assert!(non_unit.truncated(caps).inverse().is_ok());
    let q_only = MultiPoly::one().sub(&MultiPoly::var(Var::Q)).unwrap().truncated(caps);
    assert!(matches!(q_only.inverse(), Err(Error::NonUnit { .. })));
}
