//! Structured verification results.

use std::fmt::Debug;

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub window: String,
    pub passed: bool,
    /// Number of coefficient identities compared.
    pub checked: usize,
    /// First failing comparison, if any.
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, window: impl Into<String>) -> Self {
        CheckResult { name: name.into(), window: window.into(), passed: true, checked: 0, witness: None }
    }

    /// Compares two coefficients; the first mismatch becomes the witness.
    pub fn compare<T: PartialEq + Debug>(&mut self, at: impl FnOnce() -> String, lhs: &T, rhs: &T) -> bool {
        self.checked += 1;
        if lhs == rhs {
            return true;
        }
        self.fail(|| format!("{}: lhs = {lhs:?}, rhs = {rhs:?}", at()));
        false
    }

    pub fn assert(&mut self, ok: bool, at: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.fail(at);
        }
        ok
    }

    pub fn fail(&mut self, at: impl FnOnce() -> String) {
        if self.passed {
            self.witness = Some(at());
        }
        self.passed = false;
    }

    /// Folds in the results of a sub-job of the same check.
    pub fn merge(&mut self, other: CheckResult) {
        self.checked += other.checked;
        if !other.passed && self.passed {
            self.passed = false;
            self.witness = other.witness;
        }
    }

    /// A check that compared nothing did not certify anything.
    pub fn finish(mut self) -> Self {
        if self.checked == 0 && self.passed {
            self.passed = false;
            self.witness = Some("empty window: no coefficients compared".into());
        }
        self
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c.finish());
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn total_checked(&self) -> usize {
        self.checks.iter().map(|c| c.checked).sum()
    }
}

impl FromIterator<CheckResult> for Report {
    fn from_iter<I: IntoIterator<Item = CheckResult>>(it: I) -> Self {
        let mut r = Report::new();
        for c in it {
            r.push(c);
        }
        r
    }
}
