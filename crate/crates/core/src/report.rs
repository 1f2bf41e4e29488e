use std::fmt;

use serde::Serialize;

/// First failing input found by a verifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

impl Counterexample {
    pub fn new(input: impl fmt::Display, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        Counterexample { input: input.to_string(), expected: expected.to_string(), actual: actual.to_string() }
    }
}

/// Outcome of an exhaustive check. `passed` holds iff no counterexample was
/// recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub range: String,
    pub checked: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn pass(claim: impl Into<String>, range: impl Into<String>, checked: u64) -> Self {
        VerificationReport { claim: claim.into(), range: range.into(), checked, passed: true, counterexample: None }
    }

    pub fn fail(
        claim: impl Into<String>,
        range: impl Into<String>,
        checked: u64,
        counterexample: Counterexample,
    ) -> Self {
        VerificationReport {
            claim: claim.into(),
            range: range.into(),
            checked,
            passed: false,
            counterexample: Some(counterexample),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "claim: {}", self.claim)?;
        writeln!(f, "range: {}", self.range)?;
        writeln!(f, "checked: {}", self.checked)?;
        writeln!(f, "result: {}", if self.passed { "pass" } else { "FAIL" })?;
        if let Some(c) = &self.counterexample {
            writeln!(f, "counterexample input: {}", c.input)?;
            writeln!(f, "  expected: {}", c.expected)?;
            writeln!(f, "  actual:   {}", c.actual)?;
        }
        Ok(())
    }
}
