use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::enum_permutations;
use crate::error::{Error, Result};
use crate::qseries::{MultiPoly, Var};
use crate::zder::StatVector;

/// Numeric permutation statistics available for distribution tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stat {
    Fix,
    Des,
    Exc,
    Maj,
    Dez,
    Maz,
    Maf,
}

impl Stat {
    pub const ALL: [Stat; 7] = [Stat::Fix, Stat::Des, Stat::Exc, Stat::Maj, Stat::Dez, Stat::Maz, Stat::Maf];

    pub fn name(self) -> &'static str {
        match self {
            Stat::Fix => "fix",
            Stat::Des => "des",
            Stat::Exc => "exc",
            Stat::Maj => "maj",
            Stat::Dez => "dez",
            Stat::Maz => "maz",
            Stat::Maf => "maf",
        }
    }

    pub fn of(self, s: &StatVector) -> u64 {
        match self {
            Stat::Fix => s.fix as u64,
            Stat::Des => s.des as u64,
            Stat::Exc => s.exc as u64,
            Stat::Maj => s.maj,
            Stat::Dez => s.dez as u64,
            Stat::Maz => s.maz,
            Stat::Maf => s.maf,
        }
    }

    /// Parses a comma-separated list such as `fix,des,maj`.
    pub fn parse_list(s: &str) -> Result<Vec<Stat>> {
        s.split(',').map(|t| t.trim().parse()).collect()
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Stat::ALL.into_iter().find(|st| st.name() == s).ok_or_else(|| Error::UnknownStat { name: s.to_string() })
    }
}

/// Joint distribution of a tuple of statistics over `S_n`. Rows are keyed
/// and ordered by value tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub n: usize,
    pub stats: Vec<Stat>,
    pub counts: BTreeMap<Vec<u64>, u64>,
}

impl DistributionTable {
    pub fn new(n: usize, stats: Vec<Stat>) -> Self {
        DistributionTable { n, stats, counts: BTreeMap::new() }
    }

    pub fn record(&mut self, s: &StatVector) {
        let key = self.stats.iter().map(|st| st.of(s)).collect();
        *self.counts.entry(key).or_insert(0) += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Same counts regardless of which statistics label the columns.
    pub fn same_counts(&self, other: &DistributionTable) -> bool {
        self.n == other.n && self.counts == other.counts
    }

    /// Generating polynomial, with column `i` carried by `vars[i]`.
    pub fn to_poly(&self, vars: &[Var]) -> Result<MultiPoly> {
        assert_eq!(vars.len(), self.stats.len(), "one variable per statistic");
        let mut poly = MultiPoly::zero();
        for (key, &count) in &self.counts {
            let exps: Vec<(Var, u32)> = vars.iter().zip(key).map(|(&v, &e)| (v, e as u32)).collect();
            let coef = i64::try_from(count).map_err(|_| Error::Overflow)?;
            poly = poly.add(&MultiPoly::monomial(coef, &exps))?;
        }
        Ok(poly)
    }

    pub fn to_json(&self) -> Value {
        let mut counts = Map::new();
        for (key, &count) in &self.counts {
            counts.insert(join(key, ","), json!(count));
        }
        json!({
            "n": self.n,
            "stats": self.stats,
            "total": self.total(),
            "counts": counts,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for st in &self.stats {
            out.push_str(st.name());
            out.push(',');
        }
        out.push_str("count\n");
        for (key, count) in &self.counts {
            out.push_str(&join(key, ","));
            out.push_str(&format!(",{count}\n"));
        }
        out
    }
}

impl fmt::Display for DistributionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.stats.iter().map(|s| s.name()).collect();
        writeln!(f, "n = {}, ({}), total {}", self.n, names.join(","), self.total())?;
        for (key, count) in &self.counts {
            writeln!(f, "({})  {count}", join(key, ","))?;
        }
        Ok(())
    }
}

fn join(key: &[u64], sep: &str) -> String {
    key.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}

/// Joint distribution of `stats` over `S_n`.
pub fn joint_distribution(n: usize, stats: &[Stat], cap: usize) -> Result<DistributionTable> {
    let mut table = DistributionTable::new(n, stats.to_vec());
    for sigma in enum_permutations(n, cap)? {
        table.record(&crate::zder::perm_stats(&sigma));
    }
    Ok(table)
}
