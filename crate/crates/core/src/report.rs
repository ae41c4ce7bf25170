use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::scs::IdentityReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Phermion,
    Susy,
    Grassmann,
    Scs,
    Identity,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Core,
        Suite::Phermion,
        Suite::Susy,
        Suite::Grassmann,
        Suite::Scs,
        Suite::Identity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Phermion => "phermion",
            Suite::Susy => "susy",
            Suite::Grassmann => "grassmann",
            Suite::Scs => "scs",
            Suite::Identity => "identity",
        }
    }

    /// Everything except the quadrature-heavy identity suite.
    pub fn default_set() -> Vec<Suite> {
        Suite::ALL[..5].to_vec()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}'")))
    }
}

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub check_id: String,
    /// Short tag naming the identity being checked.
    pub anchor: &'static str,
    pub residual: f64,
    /// `None` for quantities that are reported but not asserted.
    pub tolerance: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes when `residual <= tolerance` (NaN fails).
    pub fn bounded(suite: Suite, check_id: impl Into<String>, anchor: &'static str, residual: f64, tolerance: f64) -> Self {
        Self {
            suite,
            check_id: check_id.into(),
            anchor,
            residual,
            tolerance: Some(tolerance),
            pass: residual <= tolerance,
            note: None,
        }
    }

    /// A reported value with no pass criterion.
    pub fn reported(suite: Suite, check_id: impl Into<String>, anchor: &'static str, value: f64) -> Self {
        Self {
            suite,
            check_id: check_id.into(),
            anchor,
            residual: value,
            tolerance: None,
            pass: true,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamEcho {
    pub omega: f64,
    pub alpha: f64,
    pub beta: f64,
    pub z: f64,
    pub hermitian_limit: bool,
}

/// Structured output of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub params: ParamEcho,
    pub suites: Vec<Suite>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<IdentityReport>,
    pub summary: Summary,
}

impl Report {
    /// Orders checks by `(suite, check_id)` and fills in the summary.
    pub fn new(command: &str, seed: u64, params: ParamEcho, suites: Vec<Suite>, mut checks: Vec<Check>, identity: Option<IdentityReport>) -> Self {
        checks.sort_by(|a, b| (a.suite, &a.check_id).cmp(&(b.suite, &b.check_id)));
        let passed = checks.iter().filter(|c| c.pass).count();
        Self {
            command: command.to_string(),
            seed,
            params,
            suites,
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
            identity,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }
}
