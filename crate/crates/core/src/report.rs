//! Check results shared by all suites.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub check_id: String,
    /// Label of the identity being checked.
    pub paper_anchor: String,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    pub fn new(suite: &str, check_id: impl Into<String>, anchor: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            suite: suite.to_string(),
            check_id: check_id.into(),
            paper_anchor: anchor.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn push(&mut self, r: CheckResult) {
        self.results.push(r);
    }

    pub fn extend<I: IntoIterator<Item = CheckResult>>(&mut self, rs: I) {
        self.results.extend(rs);
    }

    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.results.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}
