use std::time::Instant;

use mfkit::homology::{DimReport, Verdict};
use mfkit::Error;
use serde::Serialize;

use crate::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Undetermined,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undetermined => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub id: String,
    pub paper_ref: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: Params,
    pub assertions: Vec<Assertion>,
    pub elapsed_ms: u128,
}

impl Report {
    /// Failure outranks Undetermined, which outranks a pass.
    pub fn status(&self) -> Status {
        self.assertions.iter().map(|a| a.status).max().unwrap_or(Status::Pass)
    }

    pub fn count(&self, s: Status) -> usize {
        self.assertions.iter().filter(|a| a.status == s).count()
    }
}

/// Collects assertions while a suite runs.
pub struct Recorder {
    start: Instant,
    assertions: Vec<Assertion>,
}

impl Default for Recorder {
    fn default() -> Self {
        Self::new()
    }
}

impl Recorder {
    pub fn new() -> Self {
        Self {
            start: Instant::now(),
            assertions: Vec::new(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, statement: &str, status: Status, detail: impl Into<String>) {
        self.assertions.push(Assertion {
            id: id.into(),
            paper_ref: statement.to_string(),
            status,
            detail: detail.into(),
        });
    }

    /// Records a computed boolean; an `Undetermined` error stays distinct from failure.
    pub fn truth(&mut self, id: impl Into<String>, statement: &str, r: mfkit::Result<bool>, detail: impl Into<String>) {
        let (status, detail) = match r {
            Ok(true) => (Status::Pass, detail.into()),
            Ok(false) => (Status::Fail, detail.into()),
            Err(e) => error_status(&e),
        };
        self.push(id, statement, status, detail);
    }

    pub fn dim(&mut self, id: impl Into<String>, statement: &str, r: mfkit::Result<DimReport>, want: usize) {
        self.verdict(id, statement, r, Verdict::Stable(want));
    }

    pub fn verdict(&mut self, id: impl Into<String>, statement: &str, r: mfkit::Result<DimReport>, want: Verdict) {
        let (status, detail) = match r {
            Ok(rep) if rep.verdict == want => (Status::Pass, format!("{} after {} orders", rep.verdict, rep.pairs.len())),
            Ok(rep) if rep.verdict == Verdict::Undetermined => {
                (Status::Undetermined, format!("expected {want}, trace {:?}", rep.pairs))
            }
            Ok(rep) => (Status::Fail, format!("expected {want}, got {} (trace {:?})", rep.verdict, rep.pairs)),
            Err(e) => error_status(&e),
        };
        self.push(id, statement, status, detail);
    }

    pub fn finish(self, suite: &str, params: &Params) -> Report {
        Report {
            suite: suite.to_string(),
            params: params.clone(),
            assertions: self.assertions,
            elapsed_ms: self.start.elapsed().as_millis(),
        }
    }
}

fn error_status(e: &Error) -> (Status, String) {
    match e {
        Error::Undetermined(_) => (Status::Undetermined, e.to_string()),
        _ => (Status::Fail, e.to_string()),
    }
}

/// Table cell: the stable value, `inf` for growth, `?` when the budget ran out.
pub fn cell(r: &DimReport) -> String {
    match r.verdict {
        Verdict::Stable(d) => d.to_string(),
        Verdict::Growing => "inf".into(),
        Verdict::Undetermined => "?".into(),
    }
}
