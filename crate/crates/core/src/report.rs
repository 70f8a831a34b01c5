//! Structured results of verification runs.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    /// Largest residual observed, for checks that measure one.
    pub residual: Option<f64>,
    pub witness: String,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, ok: bool, residual: Option<f64>, witness: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        CheckRecord { name: name.into(), status, residual, witness: witness.into() }
    }

    /// A check counted over `total` trials; passes when every trial passed.
    pub fn count(name: impl Into<String>, passed: usize, total: usize) -> Self {
        Self::new(name, passed == total, None, format!("{passed}/{total}"))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub seed: Option<u64>,
    /// Working precision in decimal digits (absent for purely exact runs).
    pub precision: Option<u32>,
    pub checks: Vec<CheckRecord>,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn new(command: impl Into<String>, seed: Option<u64>, precision: Option<u32>) -> Self {
        RunReport { command: command.into(), seed, precision, checks: Vec::new(), wall_time_ms: 0 }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
