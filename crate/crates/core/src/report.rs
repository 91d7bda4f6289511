//! Pass/fail bookkeeping shared by every verification routine.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// An ordered list of named checks. Failures are data, not errors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    pub fn assert_that(&mut self, name: impl Into<String>, passed: bool) {
        self.push(name, passed, None);
    }

    /// Records one check over a whole scan; the first `Some(witness)` in
    /// `failures` marks it failed.
    pub fn scan<I>(&mut self, name: impl Into<String>, failures: I)
    where
        I: IntoIterator<Item = Option<String>>,
    {
        let witness = failures.into_iter().flatten().next();
        self.push(name, witness.is_none(), witness);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_keeps_first_witness() {
        let mut r = Report::new("t");
        r.scan("odd", (0..5).map(|i| (i % 2 == 1).then(|| format!("i={i}"))));
        r.assert_that("ok", true);
        assert!(!r.all_passed());
        assert_eq!(r.get("odd").unwrap().detail.as_deref(), Some("i=1"));
        assert!(r.passed("ok"));
        assert_eq!(r.failures().count(), 1);
    }
}
