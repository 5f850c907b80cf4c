//! Pass/fail tables for identity checks.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: None,
        });
        passed
    }

    pub fn check_detail(
        &mut self,
        name: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: Some(detail.into()),
        });
        passed
    }

    /// Records a failure carrying an error message (for checks that could not run).
    pub fn error(&mut self, name: impl Into<String>, err: impl fmt::Display) {
        self.check_detail(name, false, err.to_string());
    }

    pub fn extend(&mut self, other: Report) {
        let prefix = other.suite;
        self.checks.extend(other.checks.into_iter().map(|mut c| {
            if !prefix.is_empty() {
                c.name = format!("{prefix}: {}", c.name);
            }
            c
        }));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) if !c.passed => writeln!(f, "{status} [{}] {}: {d}", self.suite, c.name)?,
                _ => writeln!(f, "{status} [{}] {}", self.suite, c.name)?,
            }
        }
        Ok(())
    }
}
