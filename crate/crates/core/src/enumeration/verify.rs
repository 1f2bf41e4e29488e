use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::table::{joint_distribution, Stat};
use super::{all_words, binomial, check_cap, derangement_classes, enum_derangements, enum_permutations};
use super::{factorial, DEFAULT_ENUM_CAP, DEFAULT_SWEEP_MAX_N};
use crate::error::{Error, Result};
use crate::f3::{delta, delta_inv, f3, f3_inv, f3_trace, gamma, gamma_inv, F3Case};
use crate::phi::{phi, phi_l, phi_via_theta, psi, psi_l, theta_chain};
use crate::qseries::{verify_identity_126, verify_identity_127};
use crate::report::{Counterexample, VerificationReport};
use crate::word::{Letter, Word};
use crate::zder::{f3_perm, f3_phi_inv_perm, perm_stats, phi_perm, psi_perm, zder, zder_inv, Permutation};

/// Largest letter of the words swept by the `F₃` checks. Words of length
/// `n` over `0..=SLICE_MAX_LETTER` cover every shuffle class whose positive
/// word uses letters up to this bound.
pub const SLICE_MAX_LETTER: Letter = 3;

/// Claims that [`verify_claim`] can check exhaustively. The string ids are
/// the names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    /// `Φ` maps each shuffle class over a derangement onto itself and
    /// carries `RISE` to `RISE•`.
    ZeroMovingRises,
    /// `F₃` carries `maj` to `mafz` and keeps the last letter.
    MajToMafz,
    /// `ZDer` is a bijection onto the derangement shuffle classes and turns
    /// `RISE` into `RISE•`.
    ZeroEncoding,
    /// The induced maps on permutations transfer `(fix, RIZE, Der)`,
    /// `(fix, maz, Der)` and `(fix, maj, Der)`.
    PermutationTransfers,
    /// `(fix, dez, maz)` and `(fix, des, maj)` are equidistributed, as are
    /// the three `(fix, exc, ·)` triples.
    Equidistribution,
    /// Equal zero sets and equal descent sets of the positive subwords give
    /// equal zero sets of the `F₃` images.
    ZeroSetsFollowDescents,
    /// Every map composed with its inverse is the identity.
    RoundTrips,
    /// Coefficient form of the exponential generating identity for
    /// `(fix, exc, maj)`.
    ExcIdentity,
    /// Truncated-series form of the generating identity for
    /// `(fix, des, maj)`.
    DesIdentity,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::ZeroMovingRises,
        Claim::MajToMafz,
        Claim::ZeroEncoding,
        Claim::PermutationTransfers,
        Claim::Equidistribution,
        Claim::ZeroSetsFollowDescents,
        Claim::RoundTrips,
        Claim::ExcIdentity,
        Claim::DesIdentity,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::ZeroMovingRises => "thm-1.1",
            Claim::MajToMafz => "thm-1.2",
            Claim::ZeroEncoding => "prop-1.3",
            Claim::PermutationTransfers => "thm-1.4",
            Claim::Equidistribution => "cor-1.5",
            Claim::ZeroSetsFollowDescents => "prop-4.1",
            Claim::RoundTrips => "roundtrips",
            Claim::ExcIdentity => "id-1.27",
            Claim::DesIdentity => "id-1.26",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL.into_iter().find(|c| c.id() == s).ok_or_else(|| Error::UnknownClaim { name: s.to_string() })
    }
}

/// Parameter ranges of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyParams {
    pub min_n: usize,
    /// Upper end of the sweep; the largest `n` for the exponential identity.
    pub max_n: usize,
    pub cap: usize,
    /// `u` cap of the truncated-series identity.
    pub max_u: usize,
    /// `t` cap of the truncated-series identity.
    pub max_t: usize,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams { min_n: 0, max_n: DEFAULT_SWEEP_MAX_N, cap: DEFAULT_ENUM_CAP, max_u: 6, max_t: 6 }
    }
}

impl VerifyParams {
    pub fn up_to(max_n: usize) -> Self {
        VerifyParams { max_n, ..VerifyParams::default() }
    }

    pub fn only(n: usize) -> Self {
        VerifyParams { min_n: n, max_n: n, ..VerifyParams::default() }
    }
}

/// Runs `claim` over its natural domain for every `n` in the range of
/// `params`. Work is spread over the rayon pool, but the report (including
/// the first counterexample in enumeration order) does not depend on the
/// number of workers.
pub fn verify_claim(claim: Claim, params: &VerifyParams) -> Result<VerificationReport> {
    match claim {
        Claim::ExcIdentity => return verify_identity_127(params.max_n, params.cap),
        Claim::DesIdentity => return verify_identity_126(params.max_u, params.max_t, params.cap),
        _ => {}
    }
    check_cap(params.max_n, params.cap)?;
    let range = format!("n = {}..={}", params.min_n, params.max_n);
    let mut checked = 0;
    for n in params.min_n..=params.max_n {
        let (count, failure) = match claim {
            Claim::ZeroMovingRises => zero_moving_rises(n, params.cap)?,
            Claim::MajToMafz => maj_to_mafz(n),
            Claim::ZeroEncoding => zero_encoding(n, params.cap)?,
            Claim::PermutationTransfers => permutation_transfers(n, params.cap)?,
            Claim::Equidistribution => equidistribution(n, params.cap)?,
            Claim::ZeroSetsFollowDescents => zero_sets_follow_descents(n),
            Claim::RoundTrips => round_trips(n, params.cap)?,
            Claim::ExcIdentity | Claim::DesIdentity => unreachable!("handled above"),
        };
        checked += count;
        if let Some(cx) = failure {
            return Ok(VerificationReport::fail(claim.id(), range, checked, cx));
        }
    }
    Ok(VerificationReport::pass(claim.id(), range, checked))
}

/// Number of objects checked, or the first failure.
type Check = std::result::Result<u64, Counterexample>;

/// Count of objects checked, and the first counterexample if any.
type Outcome = (u64, Option<Counterexample>);

fn sweep<T: Sync>(items: &[T], check: impl Fn(&T) -> Check + Sync + Send) -> Outcome {
    let results: Vec<Check> = items.par_iter().map(check).collect();
    let mut total = 0;
    for r in results {
        match r {
            Ok(k) => total += k,
            Err(cx) => return (total + 1, Some(cx)),
        }
    }
    (total, None)
}

fn ensure(
    ok: bool,
    input: impl fmt::Display,
    expected: impl FnOnce() -> String,
    actual: impl FnOnce() -> String,
) -> std::result::Result<(), Counterexample> {
    if ok {
        Ok(())
    } else {
        Err(Counterexample::new(input, expected(), actual()))
    }
}

fn lib<T>(input: impl fmt::Display, r: Result<T>) -> std::result::Result<T, Counterexample> {
    r.map_err(|e| Counterexample::new(input, "no error", e))
}

fn words_by_class(n: usize) -> Vec<Vec<Word>> {
    let mut classes: BTreeMap<Word, Vec<Word>> = BTreeMap::new();
    for w in all_words(n, SLICE_MAX_LETTER) {
        classes.entry(w.pos_subword()).or_default().push(w);
    }
    classes.into_values().collect()
}

fn zero_moving_rises(n: usize, cap: usize) -> Result<Outcome> {
    let classes = derangement_classes(n, cap)?;
    Ok(sweep(&classes, |id| {
        let members = id.members();
        let mut images = HashSet::with_capacity(members.len());
        for w in &members {
            let image = lib(w, phi(w))?;
            ensure(
                id.contains(&image),
                w,
                || format!("image in Sh(0^{} {})", id.zeros(), id.v()),
                || format!("Φ = {image}"),
            )?;
            let bullet = lib(&image, image.rise_bullet_set())?;
            ensure(w.rise_set() == bullet, w, || format!("RISE = {}", w.rise_set()), || format!("RISE• Φ = {bullet}"))?;
            let via_theta = lib(w, phi_via_theta(w))?;
            ensure(via_theta == image, w, || format!("Φ = {image}"), || format!("factorized Φ = {via_theta}"))?;
            for f in lib(w, theta_chain(w))? {
                ensure(
                    lib(w, f.boundary_identities_hold(w))?,
                    w,
                    || "boundary identities".into(),
                    || format!("fail at u = {}, u' = {}, θ(u') = {}", f.u, f.u_prime, f.theta_u_prime),
                )?;
            }
            images.insert(image);
        }
        ensure(
            images.len() == members.len(),
            format!("Sh(0^{} {})", id.zeros(), id.v()),
            || format!("{} distinct images", members.len()),
            || format!("{} distinct images", images.len()),
        )?;
        Ok(members.len() as u64)
    }))
}

fn maj_to_mafz(n: usize) -> Outcome {
    let classes = words_by_class(n);
    sweep(&classes, |members| {
        let mut images = HashSet::with_capacity(members.len());
        for w in members {
            let image = f3(w);
            ensure(
                w.maj() == image.mafz(),
                w,
                || format!("mafz F₃ = maj = {}", w.maj()),
                || format!("F₃ = {image}, mafz = {}", image.mafz()),
            )?;
            ensure(
                w.last_letter() == image.last_letter(),
                w,
                || "same last letter".into(),
                || format!("F₃ = {image}"),
            )?;
            ensure(
                w.pos_subword() == image.pos_subword() && w.zero_count() == image.zero_count(),
                w,
                || format!("Pos = {}, {} zeros", w.pos_subword(), w.zero_count()),
                || format!("F₃ = {image}"),
            )?;
            if w.zero_count() == 0 {
                ensure(image == *w, w, || "fixed by F₃".into(), || format!("F₃ = {image}"))?;
            }
            check_trace(w)?;
            images.insert(image);
        }
        ensure(
            images.len() == members.len(),
            format!("class of {}", members[0]),
            || format!("{} distinct images", members.len()),
            || format!("{} distinct images", images.len()),
        )?;
        Ok(members.len() as u64)
    })
}

/// Every prefix keeps `maj = mafz F₃`, and each `γ`/`δ` call shifts `mafz`
/// by the number of positive letters or zeros respectively.
fn check_trace(w: &Word) -> std::result::Result<(), Counterexample> {
    let letters = w.letters();
    let mut prev = Word::from_slice(&letters[..letters.len().min(1)]);
    for step in f3_trace(w) {
        let prefix = Word::from_slice(&letters[..step.len]);
        ensure(
            prefix.maj() == step.image.mafz(),
            &prefix,
            || format!("mafz = {}", prefix.maj()),
            || format!("F₃ = {}, mafz = {}", step.image, step.image.mafz()),
        )?;
        match step.case {
            F3Case::Case2 => {
                let g = lib(&prev, gamma(&prev))?;
                let expected = prev.mafz() - prev.positive_count() as u64;
                ensure(
                    g.mafz() == expected,
                    &prev,
                    || format!("mafz γ = {expected}"),
                    || format!("γ = {g}, mafz = {}", g.mafz()),
                )?;
            }
            F3Case::Case3 => {
                let d = lib(&prev, delta(&prev))?;
                let expected = prev.mafz() + prev.zero_count() as u64;
                ensure(
                    d.mafz() == expected,
                    &prev,
                    || format!("mafz δ = {expected}"),
                    || format!("δ = {d}, mafz = {}", d.mafz()),
                )?;
            }
            F3Case::Case1 | F3Case::Degenerate => {}
        }
        prev = step.image;
    }
    Ok(())
}

fn zero_encoding(n: usize, cap: usize) -> Result<Outcome> {
    let perms: Vec<Permutation> = enum_permutations(n, cap)?.collect();
    let (count, failure) = sweep(&perms, |sigma| {
        let z = zder(sigma);
        let back = lib(&z, zder_inv(&z))?;
        ensure(back == *sigma, sigma, || format!("ZDer⁻¹ ZDer = {sigma}"), || back.to_string())?;
        ensure(
            z.pos_subword().is_derangement(),
            sigma,
            || "Der is a derangement".into(),
            || format!("Der = {}", z.pos_subword()),
        )?;
        let s = perm_stats(sigma);
        ensure(
            s.rize_set == z.rise_set(),
            sigma,
            || format!("RIZE = {}", z.rise_set()),
            || format!("RIZE = {}", s.rize_set),
        )?;
        let bullet = lib(&z, z.rise_bullet_set())?;
        ensure(s.rise_set == bullet, sigma, || format!("RISE = {}", s.rise_set), || format!("RISE• ZDer = {bullet}"))?;
        Ok(1)
    });
    if failure.is_some() {
        return Ok((count, failure));
    }
    let images: HashSet<Word> = perms.par_iter().map(zder).collect();
    let class_total: u64 = (0..=n)
        .map(|m| Ok(binomial(n as u64, m as u64) * enum_derangements(m, cap)?.count() as u64))
        .sum::<Result<u64>>()?;
    let expected = factorial(n as u64);
    if images.len() as u64 != expected || class_total != expected {
        let cx = Counterexample::new(
            format!("n = {n}"),
            format!("{expected} images and Σ C(n,m) d_m = {expected}"),
            format!("{} images, Σ C(n,m) d_m = {class_total}", images.len()),
        );
        return Ok((count, Some(cx)));
    }
    Ok((count, None))
}

fn permutation_transfers(n: usize, cap: usize) -> Result<Outcome> {
    let perms: Vec<Permutation> = enum_permutations(n, cap)?.collect();
    let (count, failure) = sweep(&perms, |sigma| {
        let s = perm_stats(sigma);
        let der = zder(sigma).pos_subword();
        let tuple = |name: &str, a: String| format!("({name}) = {a}");

        let p = phi_perm(sigma);
        let ps = perm_stats(&p);
        let pder = zder(&p).pos_subword();
        ensure(
            (s.fix, &s.rize_set, &der) == (ps.fix, &ps.rise_set, &pder),
            sigma,
            || tuple("fix, RIZE, Der", format!("{}, {}, {der}", s.fix, s.rize_set)),
            || format!("Φ = {p}: {}, {}, {pder}", ps.fix, ps.rise_set),
        )?;
        ensure(
            (s.fix, &s.dez_set, s.exc) == (ps.fix, &ps.des_set, ps.exc),
            sigma,
            || tuple("fix, DEZ, exc", format!("{}, {}, {}", s.fix, s.dez_set, s.exc)),
            || format!("Φ = {p}: {}, {}, {}", ps.fix, ps.des_set, ps.exc),
        )?;
        ensure(
            (s.fix, s.dez, s.maz, s.exc) == (ps.fix, ps.des, ps.maj, ps.exc),
            sigma,
            || tuple("fix, dez, maz, exc", format!("{}, {}, {}, {}", s.fix, s.dez, s.maz, s.exc)),
            || format!("Φ = {p}: {}, {}, {}, {}", ps.fix, ps.des, ps.maj, ps.exc),
        )?;

        let f = f3_perm(sigma);
        let fs = perm_stats(&f);
        let fder = zder(&f).pos_subword();
        ensure(
            (s.fix, s.maz, &der, s.exc) == (fs.fix, fs.maf, &fder, fs.exc),
            sigma,
            || tuple("fix, maz, Der, exc", format!("{}, {}, {der}, {}", s.fix, s.maz, s.exc)),
            || format!("F₃ = {f}: {}, {}, {fder}, {}", fs.fix, fs.maf, fs.exc),
        )?;

        let g = f3_phi_inv_perm(sigma);
        let gs = perm_stats(&g);
        let gder = zder(&g).pos_subword();
        ensure(
            (s.fix, s.maj, &der) == (gs.fix, gs.maf, &gder),
            sigma,
            || tuple("fix, maj, Der", format!("{}, {}, {der}", s.fix, s.maj)),
            || format!("F₃Φ⁻¹ = {g}: {}, {}, {gder}", gs.fix, gs.maf),
        )?;

        if sigma.is_derangement() {
            ensure(p == *sigma && f == *sigma, sigma, || "fixed by Φ and F₃".into(), || format!("Φ = {p}, F₃ = {f}"))?;
        }
        Ok(1)
    });
    if failure.is_some() {
        return Ok((count, failure));
    }

    let n_fact = factorial(n as u64) as usize;
    type PermMap = fn(&Permutation) -> Permutation;
    let maps: [(&str, PermMap); 3] = [("Φ", phi_perm), ("F₃", f3_perm), ("F₃Φ⁻¹", f3_phi_inv_perm)];
    for (name, map) in maps {
        let images: HashSet<Permutation> = perms.par_iter().map(map).collect();
        if images.len() != n_fact {
            let cx = Counterexample::new(
                format!("{name} on S_{n}"),
                format!("{n_fact} distinct images"),
                format!("{} distinct images", images.len()),
            );
            return Ok((count, Some(cx)));
        }
    }

    let mut exc_by_der: BTreeMap<Word, BTreeSet<usize>> = BTreeMap::new();
    for sigma in &perms {
        exc_by_der.entry(zder(sigma).pos_subword()).or_default().insert(sigma.exc());
    }
    if let Some((der, excs)) = exc_by_der.iter().find(|(_, e)| e.len() > 1) {
        let cx = Counterexample::new(
            format!("permutations with Der = {der}"),
            "a single exc value",
            format!("exc values {excs:?}"),
        );
        return Ok((count, Some(cx)));
    }
    Ok((count, None))
}

fn equidistribution(n: usize, cap: usize) -> Result<Outcome> {
    use Stat::*;
    let pairs: [([Stat; 3], [Stat; 3]); 3] =
        [([Fix, Dez, Maz], [Fix, Des, Maj]), ([Fix, Exc, Maz], [Fix, Exc, Maj]), ([Fix, Exc, Maj], [Fix, Exc, Maf])];
    let checked = factorial(n as u64);
    for (left, right) in pairs {
        let a = joint_distribution(n, &left, cap)?;
        let b = joint_distribution(n, &right, cap)?;
        if !a.same_counts(&b) {
            let names = |s: &[Stat]| s.iter().map(|x| x.name()).collect::<Vec<_>>().join(",");
            let cx = Counterexample::new(
                format!("n = {n}, ({}) vs ({})", names(&left), names(&right)),
                a.to_csv().replace('\n', "; "),
                b.to_csv().replace('\n', "; "),
            );
            return Ok((checked, Some(cx)));
        }
    }
    Ok((checked, None))
}

fn zero_sets_follow_descents(n: usize) -> Outcome {
    let mut groups: BTreeMap<(Vec<usize>, Vec<usize>), Vec<Word>> = BTreeMap::new();
    for w in all_words(n, SLICE_MAX_LETTER) {
        let key = (w.zero_set().as_slice().to_vec(), w.pos_subword().des_set().as_slice().to_vec());
        groups.entry(key).or_default().push(w);
    }
    let groups: Vec<Vec<Word>> = groups.into_values().collect();
    sweep(&groups, |words| {
        let first = &words[0];
        let zero = f3(first).zero_set();
        for w in &words[1..] {
            let other = f3(w).zero_set();
            ensure(
                other == zero,
                format!("{first} and {w}"),
                || format!("Zero F₃ = {zero} for both"),
                || format!("Zero F₃ = {zero} and {other}"),
            )?;
        }
        Ok(words.len() as u64)
    })
}

fn round_trips(n: usize, cap: usize) -> Result<Outcome> {
    let classes = derangement_classes(n, cap)?;
    let (phi_count, failure) = sweep(&classes, |id| {
        let members = id.members();
        for w in &members {
            let there = lib(w, phi(w))?;
            let back = lib(&there, psi(&there))?;
            ensure(back == *w, w, || format!("ΨΦ = {w}"), || back.to_string())?;
            let other = lib(w, psi(w))?;
            let again = lib(&other, phi(&other))?;
            ensure(again == *w, w, || format!("ΦΨ = {w}"), || again.to_string())?;
            for l in 1..=w.zero_count() {
                let step = lib(w, phi_l(w, l))?;
                let undo = lib(&step, psi_l(&step, l))?;
                ensure(undo == *w, w, || format!("ψ_{l} φ_{l} = {w}"), || undo.to_string())?;
            }
        }
        Ok(members.len() as u64)
    });
    if failure.is_some() {
        return Ok((phi_count, failure));
    }

    let words = all_words(n, SLICE_MAX_LETTER);
    let (word_count, failure) = sweep(&words, |w| {
        let back = f3_inv(&f3(w));
        ensure(back == *w, w, || format!("F₃⁻¹F₃ = {w}"), || back.to_string())?;
        let again = f3(&f3_inv(w));
        ensure(again == *w, w, || format!("F₃F₃⁻¹ = {w}"), || again.to_string())?;
        if w.last_letter() == Some(0) {
            let g = lib(w, gamma(w))?;
            let back = lib(&g, gamma_inv(&g))?;
            ensure(back == *w, w, || format!("γ⁻¹γ = {w}"), || back.to_string())?;
        }
        if w.last_letter().is_some_and(|b| b > 0) || w.zero_count() == w.len() {
            let d = lib(w, delta(w))?;
            let back = lib(&d, delta_inv(&d))?;
            ensure(back == *w, w, || format!("δ⁻¹δ = {w}"), || back.to_string())?;
        }
        Ok(1)
    });
    let mut checked = phi_count + word_count;
    if failure.is_some() {
        return Ok((checked, failure));
    }

    let perms: Vec<Permutation> = enum_permutations(n, cap)?.collect();
    let (perm_count, failure) = sweep(&perms, |sigma| {
        let back = lib(zder(sigma), zder_inv(&zder(sigma)))?;
        ensure(back == *sigma, sigma, || format!("ZDer⁻¹ZDer = {sigma}"), || back.to_string())?;
        let there = phi_perm(sigma);
        let back = psi_perm(&there);
        ensure(back == *sigma, sigma, || format!("Φ⁻¹Φ = {sigma}"), || back.to_string())?;
        Ok(1)
    });
    checked += perm_count;
    Ok((checked, failure))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_ids_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.id().parse::<Claim>().unwrap(), c);
        }
        assert_eq!("thm-9".parse::<Claim>(), Err(Error::UnknownClaim { name: "thm-9".into() }));
    }

    #[test]
    fn small_sweeps_pass() {
        for c in Claim::ALL {
            let params = VerifyParams { max_n: 4, max_u: 3, max_t: 3, ..VerifyParams::default() };
            let r = verify_claim(c, &params).unwrap();
            assert!(r.passed, "{r}");
            assert!(r.checked > 0, "{r}");
        }
    }

    #[test]
    fn trivial_ranges() {
        let r = verify_claim(Claim::ZeroMovingRises, &VerifyParams::only(1)).unwrap();
        assert!(r.passed);
        assert_eq!(r.checked, 1);
        let r =
            verify_claim(Claim::ZeroMovingRises, &VerifyParams { min_n: 0, max_n: 1, ..Default::default() }).unwrap();
        assert_eq!(r.checked, 2);
    }

    #[test]
    fn cor_n4_counts_all_permutations() {
        let r = verify_claim(Claim::Equidistribution, &VerifyParams::only(4)).unwrap();
        assert!(r.passed);
        assert_eq!(r.checked, 24);
    }

    #[test]
    fn cap_is_enforced() {
        let params = VerifyParams { max_n: 10, ..Default::default() };
        assert_eq!(
            verify_claim(Claim::PermutationTransfers, &params),
            Err(Error::CapExceeded { n: 10, cap: DEFAULT_ENUM_CAP })
        );
    }

    #[test]
    fn sweep_reports_first_failure_in_order() {
        let items: Vec<u32> = (0..100).collect();
        let (count, cx) =
            sweep(&items, |&i| if i % 10 == 7 { Err(Counterexample::new(i, "even", "odd")) } else { Ok(1) });
        assert_eq!(count, 8);
        assert_eq!(cx.unwrap().input, "7");
    }
}
