//! Machine-readable verification reports.
//!
//! Serialized field order is fixed by declaration order, and every numeric
//! quantity that is not a count is carried as a decimal string, so a report
//! for the same inputs and seed is byte-identical across runs. Wall time is
//! kept out of the serialized form for the same reason; the CLI prints it
//! to stderr instead.

use serde::Serialize;
use std::collections::BTreeMap;

/// Result of one verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub trials: u64,
    pub rejected: u64,
    pub max_residual: String,
    pub tolerance: String,
    pub pass: bool,
    pub seed: u64,
}

/// Top-level report for a CLI invocation: the command, its parameters, and
/// the per-check results. `pass` is the conjunction of check passes.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<CheckReport>,
    pub pass: bool,
    #[serde(skip)]
    pub wall_time_ms: u128,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            schema: 1,
            command: command.into(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            pass: true,
            wall_time_ms: 0,
        }
    }

    pub fn parameter(&mut self, key: &str, value: impl Into<serde_json::Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, check: CheckReport) -> &mut Self {
        self.pass = self.pass && check.pass;
        self.checks.push(check);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}
