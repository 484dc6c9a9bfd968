//! Machine-readable run reports.

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::Result;

/// How `got` is compared against `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `|got - expected| <= tolerance`
    AbsDiff,
    /// `|got - expected| <= tolerance * max(|expected|, 1)`
    RelDiff,
    /// `got <= expected + tolerance`
    AtMost,
    /// `got >= expected - tolerance`
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub got: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        relation: Relation,
        expected: f64,
        got: f64,
        tolerance: f64,
    ) -> Self {
        let pass = match relation {
            Relation::AbsDiff => (got - expected).abs() <= tolerance,
            Relation::RelDiff => (got - expected).abs() <= tolerance * expected.abs().max(1.0),
            Relation::AtMost => got <= expected + tolerance,
            Relation::AtLeast => got >= expected - tolerance,
        };
        Check {
            name: name.into(),
            expected,
            got,
            tolerance,
            relation,
            pass: pass && !got.is_nan(),
        }
    }

    pub fn close(name: impl Into<String>, expected: f64, got: f64, tolerance: f64) -> Self {
        Self::new(name, Relation::AbsDiff, expected, got, tolerance)
    }

    pub fn at_most(name: impl Into<String>, bound: f64, got: f64, tolerance: f64) -> Self {
        Self::new(name, Relation::AtMost, bound, got, tolerance)
    }

    pub fn at_least(name: impl Into<String>, bound: f64, got: f64, tolerance: f64) -> Self {
        Self::new(name, Relation::AtLeast, bound, got, tolerance)
    }

    /// Count of failures that must be zero.
    pub fn zero_count(name: impl Into<String>, failures: usize) -> Self {
        Self::new(name, Relation::AbsDiff, 0.0, failures as f64, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub wall_time_secs: f64,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    /// One `PASS`/`FAIL` line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} (expected {:e}, got {:e}, tol {:e})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.expected,
                c.got,
                c.tolerance
            ));
        }
        out
    }
}

/// Accumulates a report and stamps the wall time on `finish`.
pub struct ReportBuilder {
    command: String,
    inputs: Map<String, Value>,
    outputs: Map<String, Value>,
    checks: Vec<Check>,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(command: impl Into<String>) -> Self {
        ReportBuilder {
            command: command.into(),
            inputs: Map::new(),
            outputs: Map::new(),
            checks: Vec::new(),
            start: Instant::now(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.to_owned(), to_value(value));
        self
    }

    pub fn output(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.outputs.insert(key.to_owned(), to_value(value));
        self
    }

    pub fn check(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn checks(&mut self, checks: impl IntoIterator<Item = Check>) -> &mut Self {
        self.checks.extend(checks);
        self
    }

    pub fn finish(self) -> RunReport {
        let passed = self.checks.iter().all(|c| c.pass);
        RunReport {
            command: self.command,
            inputs: self.inputs,
            outputs: self.outputs,
            checks: self.checks,
            passed,
            wall_time_secs: self.start.elapsed().as_secs_f64(),
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}
