//! Machine-readable verification reports.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Randomized evidence only; not a proof.
    Sampled,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub details: String,
    /// The statement being checked, in words.
    pub claim: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, id: &str, ok: bool, claim: &str, details: impl Into<String>) {
        self.checks.push(Check {
            id: id.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            details: details.into(),
            claim: claim.to_string(),
        });
    }

    pub fn push_sampled(&mut self, id: &str, ok: bool, claim: &str, details: impl Into<String>) {
        self.checks.push(Check {
            id: id.to_string(),
            status: if ok { Status::Sampled } else { Status::Fail },
            details: details.into(),
            claim: claim.to_string(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        for mut c in other.checks {
            c.id = format!("{}.{}", other.suite, c.id);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}
