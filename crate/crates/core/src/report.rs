//! Structured check reports with stable JSON and fixed-width text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "N/A")]
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "N/A",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub results: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub summary: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            schema: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            seed: None,
            table: None,
            results: Vec::new(),
            data: None,
            summary: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, expected: impl ToString, actual: impl ToString, ok: bool) {
        self.results.push(CheckResult {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            verdict: Verdict::from_bool(ok),
        });
    }

    /// Record a check whose computation failed with an error.
    pub fn error(&mut self, name: impl Into<String>, expected: impl ToString, err: impl std::fmt::Display) {
        self.check(name, expected, format!("error: {err}"), false);
    }

    pub fn eq_check<T: PartialEq + std::fmt::Display>(&mut self, name: impl Into<String>, expected: T, actual: T) {
        let ok = expected == actual;
        self.check(name, expected, actual, ok);
    }

    pub fn not_applicable(&mut self, name: impl Into<String>, detail: impl ToString) {
        self.results.push(CheckResult {
            name: name.into(),
            expected: "-".into(),
            actual: detail.to_string(),
            verdict: Verdict::NotApplicable,
        });
    }

    pub fn any_fail(&self) -> bool {
        self.results.iter().any(|r| r.verdict == Verdict::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.any_fail())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cymax {} (schema {})", self.command, self.schema);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time: {ms} ms");
        }
        if let Some(t) = &self.table {
            for row in &t.rows {
                let cells: Vec<String> = t.columns.iter().zip(row).map(|(c, v)| format!("{c}={v}")).collect();
                let _ = writeln!(out, "{}", cells.join("  "));
            }
        }
        if !self.results.is_empty() {
            let w = self.results.iter().map(|r| r.name.len()).max().unwrap_or(0);
            for r in &self.results {
                let _ = writeln!(
                    out,
                    "{:<4}  {:<w$}  expected: {}  actual: {}",
                    r.verdict.label(),
                    r.name,
                    r.expected,
                    r.actual,
                    w = w
                );
            }
            let pass = self.results.iter().filter(|r| r.verdict == Verdict::Pass).count();
            let fail = self.results.iter().filter(|r| r.verdict == Verdict::Fail).count();
            let _ = writeln!(out, "{pass} passed, {fail} failed, {} n/a", self.results.len() - pass - fail);
        }
        if let Some(d) = &self.data {
            let _ = writeln!(out, "data: {d}");
        }
        for line in &self.summary {
            let _ = writeln!(out, "{line}");
        }
        out
    }
}
