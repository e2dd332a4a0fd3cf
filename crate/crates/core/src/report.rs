//! Machine-readable run reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// `measured < bound`
    Below(f64),
    /// `measured <= bound`
    AtMost(f64),
    /// `measured > bound`
    Above(f64),
    /// `lo <= measured <= hi`
    Within(f64, f64),
    /// Decided exactly; `measured` is informational.
    Exact,
}

impl Criterion {
    fn holds(&self, x: f64) -> bool {
        match *self {
            Self::Below(b) => x < b,
            Self::AtMost(b) => x <= b,
            Self::Above(b) => x > b,
            Self::Within(lo, hi) => lo <= x && x <= hi,
            Self::Exact => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The mathematical statement the check certifies.
    pub anchor: String,
    pub measured: f64,
    pub criterion: Criterion,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config_hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<String>,
    pub checks: Vec<CheckRecord>,
    pub values: BTreeMap<String, Value>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            config_hash: None,
            config: None,
            checks: Vec::new(),
            values: BTreeMap::new(),
            passed: true,
        }
    }

    pub fn with_config(mut self, text: &str, hash: &str) -> Self {
        self.config = Some(text.into());
        self.config_hash = Some(hash.into());
        self
    }

    /// Records a numeric check; NaN never passes.
    pub fn check(&mut self, name: &str, anchor: &str, measured: f64, criterion: Criterion) -> bool {
        let passed = !measured.is_nan() && criterion.holds(measured);
        self.push(name, anchor, measured, criterion, passed, None)
    }

    /// Records a check decided outside floating point.
    pub fn exact(&mut self, name: &str, anchor: &str, passed: bool, detail: impl Into<String>) -> bool {
        let measured = if passed { 0.0 } else { 1.0 };
        self.push(name, anchor, measured, Criterion::Exact, passed, Some(detail.into()))
    }

    /// Records a step that could not be carried out.
    pub fn failure(&mut self, name: &str, anchor: &str, detail: impl Into<String>) {
        self.push(name, anchor, f64::NAN, Criterion::Exact, false, Some(detail.into()));
    }

    fn push(
        &mut self,
        name: &str,
        anchor: &str,
        measured: f64,
        criterion: Criterion,
        passed: bool,
        detail: Option<String>,
    ) -> bool {
        self.passed &= passed;
        self.checks.push(CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            measured,
            criterion,
            passed,
            detail,
        });
        passed
    }

    pub fn value(&mut self, key: &str, value: impl Serialize) {
        self.values.insert(
            key.into(),
            serde_json::to_value(value).unwrap_or(Value::Null),
        );
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One `PASS`/`FAIL` line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{tag} {:<36} {:>12.4e}", c.name, c.measured);
            if let Some(d) = &c.detail {
                let _ = write!(out, "  {d}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} ({} checks)",
            if self.passed { "ALL PASSED" } else { "FAILED" },
            self.checks.len()
        );
        out
    }
}
