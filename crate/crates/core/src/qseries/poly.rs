use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Variables of the generating functions. `S` marks excedances and `T`
/// descents; the two never occur together, and both obey the `t` cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    T,
    S,
    Q,
    Y,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::U, Var::T, Var::S, Var::Q, Var::Y];

    fn slot(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::T => "t",
            Var::S => "s",
            Var::Q => "q",
            Var::Y => "Y",
        }
    }
}

pub type Exponents = [u32; 5];

/// Degree caps for truncated series: terms with `u`-degree above `max_u`,
/// or `t`- or `s`-degree above `max_t`, are dropped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesCaps {
    pub max_u: u32,
    pub max_t: u32,
}

impl SeriesCaps {
    pub fn new(max_u: u32, max_t: u32) -> Self {
        SeriesCaps { max_u, max_t }
    }

    fn admits(&self, e: &Exponents) -> bool {
        e[Var::U.slot()] <= self.max_u && e[Var::T.slot()] <= self.max_t && e[Var::S.slot()] <= self.max_t
    }

    fn meet(a: Option<SeriesCaps>, b: Option<SeriesCaps>) -> Option<SeriesCaps> {
        match (a, b) {
            (Some(x), Some(y)) => Some(SeriesCaps::new(x.max_u.min(y.max_u), x.max_t.min(y.max_t))),
            (x, None) => x,
            (None, y) => y,
        }
    }
}

/// Sparse multivariate polynomial with exact `i64` coefficients, optionally
/// truncated by [`SeriesCaps`]. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, i64>,
    caps: Option<SeriesCaps>,
}

fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        MultiPoly::monomial(c, &[])
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::monomial(1, &[(v, 1)])
    }

    /// `coef * Π v^e`. Repeated variables multiply.
    pub fn monomial(coef: i64, powers: &[(Var, u32)]) -> Self {
        let mut e = [0u32; 5];
        for &(v, k) in powers {
            e[v.slot()] += k;
        }
        let mut terms = BTreeMap::new();
        if coef != 0 {
            terms.insert(e, coef);
        }
        MultiPoly { terms, caps: None }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, i64)>>(terms: I) -> Result<Self> {
        let mut p = MultiPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn caps(&self) -> Option<SeriesCaps> {
        self.caps
    }

    /// Attaches `caps`, dropping the terms beyond them.
    pub fn truncated(&self, caps: SeriesCaps) -> Self {
        let caps = SeriesCaps::meet(self.caps, Some(caps)).expect("caps present");
        MultiPoly {
            terms: self.terms.iter().filter(|(e, _)| caps.admits(e)).map(|(e, c)| (*e, *c)).collect(),
            caps: Some(caps),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &i64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, powers: &[(Var, u32)]) -> i64 {
        let mut e = [0u32; 5];
        for &(v, k) in powers {
            e[v.slot()] += k;
        }
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i64 {
        self.terms.get(&[0; 5]).copied().unwrap_or(0)
    }

    /// Largest exponent of `v` among the stored terms.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.slot()]).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exponents, c: i64) -> Result<()> {
        if c == 0 || self.caps.is_some_and(|caps| !caps.admits(&e)) {
            return Ok(());
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = checked_add(*slot.get(), c)?;
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let caps = SeriesCaps::meet(self.caps, other.caps);
        let mut out = MultiPoly { terms: BTreeMap::new(), caps };
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(*e, *c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<MultiPoly> {
        self.scale(-1)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg()?)
    }

    pub fn scale(&self, k: i64) -> Result<MultiPoly> {
        let mut out = MultiPoly { terms: BTreeMap::new(), caps: self.caps };
        for (e, c) in &self.terms {
            out.add_term(*e, checked_mul(*c, k)?)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let caps = SeriesCaps::meet(self.caps, other.caps);
        let mut out = MultiPoly { terms: BTreeMap::new(), caps };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for (slot, x) in e.iter_mut().zip(eb) {
                    *slot = slot.checked_add(*x).ok_or(Error::Overflow)?;
                }
                if caps.is_some_and(|c| !c.admits(&e)) {
                    continue;
                }
                out.add_term(e, checked_mul(*ca, *cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<MultiPoly> {
        let mut acc = MultiPoly { caps: self.caps, ..MultiPoly::one() };
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse as a truncated geometric series. Needs caps,
    /// constant term 1, and a positive `u`, `t` or `s` degree in every other
    /// term so that the series terminates under the caps.
    pub fn inverse(&self) -> Result<MultiPoly> {
        let caps = self.caps.ok_or_else(|| Error::NonUnit { reason: "no truncation caps".into() })?;
        if self.constant_term() != 1 {
            return Err(Error::NonUnit { reason: format!("constant term is {}", self.constant_term()) });
        }
        if let Some(e) = self
            .terms
            .keys()
            .find(|e| **e != [0; 5] && e[Var::U.slot()] == 0 && e[Var::T.slot()] == 0 && e[Var::S.slot()] == 0)
        {
            return Err(Error::NonUnit { reason: format!("term {} is not capped", monomial_text(e)) });
        }
        // self = 1 - y, inverse = Σ y^k
        let one = MultiPoly::one().truncated(caps);
        let y = one.sub(self)?;
        let mut acc = one.clone();
        let mut power = one;
        loop {
            power = power.mul(&y)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// Value at integer points, indexed like [`Var::ALL`].
    pub fn evaluate(&self, values: [i64; 5]) -> Result<i64> {
        let mut total = 0i64;
        for (e, c) in &self.terms {
            let mut term = *c;
            for (slot, &x) in e.iter().zip(values.iter()) {
                for _ in 0..*slot {
                    term = checked_mul(term, x)?;
                }
            }
            total = checked_add(total, term)?;
        }
        Ok(total)
    }

    /// Sets `v = 1`, merging the terms that differ only in `v`.
    pub fn specialize_to_one(&self, v: Var) -> Result<MultiPoly> {
        let mut out = MultiPoly { terms: BTreeMap::new(), caps: self.caps };
        for (e, c) in &self.terms {
            let mut e = *e;
            e[v.slot()] = 0;
            out.add_term(e, *c)?;
        }
        Ok(out)
    }
}

fn graded_order(a: &Exponents, b: &Exponents) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn monomial_text(e: &Exponents) -> String {
    let parts: Vec<String> = Var::ALL
        .iter()
        .zip(e.iter())
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.name().to_string() } else { format!("{}^{k}", v.name()) })
        .collect();
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Terms by ascending total degree, ties broken lexicographically in
    /// the variable order `u, t, s, q, Y`: `1 - t - t*q + t^2*q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Exponents, &i64)> = self.terms.iter().collect();
        terms.sort_by(|a, b| graded_order(a.0, b.0));
        for (idx, (e, &c)) in terms.into_iter().enumerate() {
            let mono = monomial_text(e);
            let mag = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            match (mono.is_empty(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => f.write_str(&mono)?,
                (false, _) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    #[test]
    fn display_order() {
        let p =
            MultiPoly::monomial(1, &[(Var::Y, 2)]).add(&MultiPoly::monomial(1, &[(Var::S, 1), (Var::Q, 1)])).unwrap();
        assert_eq!(p.to_string(), "Y^2 + s*q");
        let p = MultiPoly::from_terms([([0, 0, 0, 0, 0], -3), ([0, 2, 0, 1, 0], 2)]).unwrap();
        assert_eq!(p.to_string(), "-3 + 2*t^2*q");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn zero_coefficients_vanish() {
        let p = v(Var::Q).sub(&v(Var::Q)).unwrap();
        assert!(p.is_zero());
        assert_eq!(MultiPoly::monomial(0, &[(Var::U, 1)]), MultiPoly::zero());
    }

    #[test]
    fn truncation_drops_capped_terms() {
        let caps = SeriesCaps::new(1, 1);
        let p = v(Var::U).add(&MultiPoly::one()).unwrap().truncated(caps);
        let sq = p.mul(&p).unwrap();
        assert_eq!(sq.to_string(), "1 + 2*u");
        let s2 = MultiPoly::monomial(1, &[(Var::S, 2)]).truncated(caps);
        assert!(s2.is_zero());
    }

    #[test]
    fn overflow_is_an_error() {
        let big = MultiPoly::constant(i64::MAX);
        assert_eq!(big.add(&MultiPoly::one()), Err(Error::Overflow));
        assert_eq!(big.mul(&MultiPoly::constant(2)), Err(Error::Overflow));
        assert_eq!(big.evaluate([2; 5]).unwrap(), i64::MAX);
        assert_eq!(MultiPoly::var(Var::Q).scale(i64::MIN).unwrap().neg(), Err(Error::Overflow));
    }

    #[test]
    fn inversion_rules() {
        let caps = SeriesCaps::new(3, 3);
        let x = MultiPoly::one().sub(&v(Var::U)).unwrap().truncated(caps);
        assert_eq!(x.inverse().unwrap().to_string(), "1 + u + u^2 + u^3");
        assert!(matches!(MultiPoly::one().sub(&v(Var::U)).unwrap().inverse(), Err(Error::NonUnit { .. })));
        let not_unit = MultiPoly::constant(2).truncated(caps);
        assert!(matches!(not_unit.inverse(), Err(Error::NonUnit { .. })));
        let uncapped = MultiPoly::one().sub(&v(Var::Q)).unwrap().truncated(caps);
        assert!(matches!(uncapped.inverse(), Err(Error::NonUnit { .. })));
    }

    #[test]
    fn evaluation_and_specialization() {
        let p = MultiPoly::from_terms([([0, 1, 0, 2, 0], 3), ([0, 0, 0, 1, 0], -1)]).unwrap();
        assert_eq!(p.evaluate([0, 2, 0, 3, 0]).unwrap(), 3 * 2 * 9 - 3);
        assert_eq!(p.specialize_to_one(Var::Q).unwrap().to_string(), "-1 + 3*t");
    }
}
