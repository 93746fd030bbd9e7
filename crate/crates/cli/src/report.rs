//! Check results and suite reports.

use serde_json::{json, Value};

/// One named check. Hard checks decide the exit status; soft checks
/// (experiments) only report.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub hard: bool,
    pub detail: Value,
}

impl Check {
    pub fn hard(name: impl Into<String>, pass: bool, detail: Value) -> Self {
        Check { name: name.into(), pass, hard: true, detail }
    }

    pub fn soft(name: impl Into<String>, pass: bool, detail: Value) -> Self {
        Check { name: name.into(), pass, hard: false, detail }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "pass": self.pass,
            "kind": if self.hard { "assertion" } else { "experiment" },
            "detail": self.detail,
        })
    }
}

/// Checks of one suite.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub description: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str, description: &str) -> Self {
        SuiteReport { suite: suite.into(), description: description.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// All hard checks hold.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass || !c.hard)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.hard && !c.pass).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        let mut checks = self.checks.clone();
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        json!({
            "suite": self.suite,
            "description": self.description,
            "pass": self.passed(),
            "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}
