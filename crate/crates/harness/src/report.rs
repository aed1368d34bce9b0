//! Per-row reports: JSON records and a plain-text table.

use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Timeout,
    Error,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Timeout => "timeout",
            Status::Error => "error",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
    pub citation: String,
    pub seconds: f64,
    /// Reason for a skip, diagnostics for an error, or conventions used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub row: String,
    pub prime: u32,
    pub seed: u64,
    /// Fresh draws used beyond the first, summed over all steps.
    pub retries: usize,
    pub checks: Vec<Check>,
}

impl RowReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| matches!(c.status, Status::Fail | Status::Error))
    }
}

#[derive(Serialize)]
struct ReportFile<'a> {
    schema: u32,
    rows: &'a [RowReport],
}

pub fn to_json(reports: &[RowReport]) -> String {
    serde_json::to_string_pretty(&ReportFile { schema: REPORT_SCHEMA, rows: reports }).expect("report serializes")
}

fn short(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One block per row, one line per check.
pub fn to_table(reports: &[RowReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "{}  (p = {}, seed = {}, retries = {})", r.row, r.prime, r.seed, r.retries);
        let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &r.checks {
            let _ = write!(
                out,
                "  {:<width$}  {:<8} expected {:<22} computed {:<22} {:>8.2}s",
                c.name,
                c.status.as_str(),
                short(&c.expected),
                short(&c.computed),
                c.seconds,
            );
            if let Some(n) = &c.note {
                let _ = write!(out, "  ({n})");
            }
            out.push('\n');
        }
    }
    out
}

/// Writes the JSON report to `path` (if any) and returns the table.
pub fn emit_report(reports: &[RowReport], path: Option<&std::path::Path>) -> std::io::Result<String> {
    if let Some(p) = path {
        std::fs::write(p, to_json(reports))?;
    }
    Ok(to_table(reports))
}
