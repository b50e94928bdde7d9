//! Verdicts returned by the identity checkers.

use std::fmt::Display;

use serde::Serialize;

/// Outcome of checking one identity over a family of cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub holds: bool,
    pub checked: usize,
    /// First failing case and its nonzero difference.
    pub residual: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), holds: true, checked: 0, residual: None }
    }

    pub fn record(&mut self, case: impl Display, ok: bool, diff: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.holds {
            self.holds = false;
            self.residual = Some(format!("{case}: {}", diff()));
        }
    }

    pub fn fail(&mut self, case: impl Display, why: impl Display) {
        self.record(case, false, || why.to_string());
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        if !other.holds && self.holds {
            self.holds = false;
            self.residual = other.residual.map(|r| format!("{}: {r}", other.name));
        }
    }
}
