//! Pass/fail records produced by the structural checks in each module.

use serde::Serialize;
use std::fmt;

/// One verified claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// The mathematical statement being checked, in short form.
    pub anchor: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        anchor: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// A check whose detail is an expected/actual pair, passing iff they agree.
    pub fn compare<T: PartialEq + fmt::Debug>(
        name: impl Into<String>,
        anchor: impl Into<String>,
        expected: &T,
        actual: &T,
    ) -> Self {
        let passed = expected == actual;
        let detail = if passed {
            format!("{actual:?}")
        } else {
            format!("expected {expected:?}, got {actual:?}")
        };
        Check::new(name, anchor, passed, detail)
    }
}

/// Ordered list of checks. Overall status passes iff every check passes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        VerificationReport { checks, passed }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "[{mark}] {} ({}): {}", c.name, c.anchor, c.detail)?;
        }
        let total = self.checks.len();
        let failed = self.failures().count();
        write!(
            f,
            "{} of {} checks passed; overall {}",
            total - failed,
            total,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}
