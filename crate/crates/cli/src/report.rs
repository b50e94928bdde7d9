//! Machine-readable suite reports.

use mirabolic::CheckReport;
use serde::Serialize;

use crate::config::ConfigEcho;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub id: String,
    pub paper_ref: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    pub millis: Option<u64>,
}

/// What a case closure returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub holds: bool,
    pub residual: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome { holds: true, residual: None }
    }

    pub fn fail(why: impl Into<String>) -> Self {
        Outcome { holds: false, residual: Some(why.into()) }
    }

    /// A negative control passes when the wrapped check fails.
    pub fn expect_failure(r: &CheckReport) -> Self {
        if r.holds {
            Outcome::fail(format!("{}: perturbed input was accepted", r.name))
        } else {
            Outcome::pass()
        }
    }
}

impl From<CheckReport> for Outcome {
    fn from(r: CheckReport) -> Self {
        Outcome { holds: r.holds, residual: r.residual.map(|x| format!("{}: {x}", r.name)) }
    }
}

impl From<bool> for Outcome {
    fn from(ok: bool) -> Self {
        if ok {
            Outcome::pass()
        } else {
            Outcome::fail("mismatch")
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: u32,
    pub suite: String,
    pub config: ConfigEcho,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn case(&self, id: &str) -> Option<&Case> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}
