use std::fmt;

use serde::{Deserialize, Serialize};

use crate::verdict::{Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Nothing refuted, but the search was not exhaustive.
    Budget,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Budget => "BUDGET",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportLine {
    pub check: String,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// An ordered list of check outcomes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            lines: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        check: impl Into<String>,
        status: Status,
        detail: impl Into<String>,
        witness: Option<Witness>,
    ) {
        self.lines.push(ReportLine {
            check: check.into(),
            status,
            detail: detail.into(),
            witness,
        });
    }

    pub fn pass(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.push(check, Status::Pass, detail, None);
    }

    pub fn fail(&mut self, check: impl Into<String>, detail: impl Into<String>, witness: Option<Witness>) {
        self.push(check, Status::Fail, detail, witness);
    }

    /// Records whether `verdict` matches the expected truth value.
    pub fn expect(&mut self, check: impl Into<String>, verdict: &Verdict, expected: bool) {
        let check = check.into();
        let witness = verdict.witness().cloned();
        match (verdict, expected) {
            (Verdict::Holds, true) | (Verdict::Fails { .. }, false) => {
                self.push(check, Status::Pass, verdict.to_string(), witness)
            }
            (Verdict::NoViolationFound { .. }, true) => {
                self.push(check, Status::Budget, verdict.to_string(), None)
            }
            _ => self.push(
                check,
                Status::Fail,
                format!("expected {expected}, got {verdict}"),
                witness,
            ),
        }
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for mut line in other.lines {
            line.check = format!("{prefix}{}", line.check);
            self.lines.push(line);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportLine> {
        self.lines.iter().filter(|l| l.status == Status::Fail)
    }

    pub fn ok(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn has_budget(&self) -> bool {
        self.lines.iter().any(|l| l.status == Status::Budget)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.title)?;
        for l in &self.lines {
            writeln!(f, "{:<6} {}: {}", l.status, l.check, l.detail)?;
        }
        Ok(())
    }
}
