//! Check reports: one line per identity, with a witness on failure.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub status: Status,
    /// Informative results are recorded but never make the report fail.
    pub informative: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub degree: usize,
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn new(suite: &str, degree: usize) -> Self {
        CheckReport {
            suite: suite.into(),
            degree,
            results: Vec::new(),
        }
    }

    /// Records a gating identity. `None` means it holds.
    pub fn record(&mut self, id: &str, description: &str, witness: Option<String>) {
        self.push(id, description, witness, false);
    }

    /// Records a measured property that does not gate the report.
    pub fn inform(&mut self, id: &str, description: &str, witness: Option<String>) {
        self.push(id, description, witness, true);
    }

    fn push(&mut self, id: &str, description: &str, witness: Option<String>, informative: bool) {
        let status = if witness.is_none() { Status::Pass } else { Status::Fail };
        self.results.push(CheckResult {
            id: id.into(),
            description: description.into(),
            status,
            informative,
            witness,
        });
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.results.extend(other.results);
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.informative || r.status == Status::Pass)
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.informative && r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (degree <= {})", self.suite, self.degree)?;
        for r in &self.results {
            let tag = match (r.status, r.informative) {
                (Status::Pass, false) => "PASS",
                (Status::Fail, false) => "FAIL",
                (Status::Pass, true) => "info pass",
                (Status::Fail, true) => "info fail",
            };
            write!(f, "  [{}] {}: {}", tag, r.id, r.description)?;
            if let Some(w) = &r.witness {
                write!(f, "\n      witness: {}", w)?;
            }
            writeln!(f)?;
        }
        let verdict = if self.passed() {
            "all identities hold"
        } else {
            "some identities fail"
        };
        write!(f, "{}", verdict)
    }
}
