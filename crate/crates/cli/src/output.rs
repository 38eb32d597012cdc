use dirsat::report::{Report, ReportLine, Status};
use serde::Serialize;

#[derive(Serialize)]
struct JsonLine<'a> {
    #[serde(flatten)]
    line: &'a ReportLine,
    /// Whether the library re-checked the witness; absent when the line has
    /// no witness or no re-check applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    revalidated: Option<bool>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    title: &'a str,
    lines: Vec<JsonLine<'a>>,
    exit_code: u8,
}

/// A finished report plus, per line, the outcome of re-validating its witness.
pub struct Outcome {
    pub command: &'static str,
    pub report: Report,
    pub revalidated: Vec<Option<bool>>,
    /// Budget-qualified lines never affect the exit code.
    pub budget_is_informational: bool,
}

impl Outcome {
    pub fn new(command: &'static str, report: Report) -> Self {
        let revalidated = vec![None; report.lines.len()];
        Outcome {
            command,
            report,
            revalidated,
            budget_is_informational: false,
        }
    }

    pub fn exit_code(&self, allow_budget: bool) -> u8 {
        let refuted = !self.report.ok() || self.revalidated.contains(&Some(false));
        let unqualified = self.report.has_budget() && !allow_budget && !self.budget_is_informational;
        u8::from(refuted || unqualified)
    }

    pub fn emit(&self, json: bool, allow_budget: bool) -> u8 {
        let code = self.exit_code(allow_budget);
        if json {
            let out = JsonReport {
                command: self.command,
                title: &self.report.title,
                lines: self
                    .report
                    .lines
                    .iter()
                    .zip(&self.revalidated)
                    .map(|(line, r)| JsonLine { line, revalidated: *r })
                    .collect(),
                exit_code: code,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("report serializes"));
        } else {
            print!("{}", self.report);
            let count = |s| self.report.lines.iter().filter(|l| l.status == s).count();
            println!(
                "-- {} pass, {} fail, {} budget-qualified",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Budget)
            );
            if count(Status::Budget) > 0 && code == 1 && self.report.ok() {
                println!("-- budget-qualified verdicts need --allow-budget to exit 0");
            }
        }
        code
    }
}
