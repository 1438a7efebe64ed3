use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::config::ScenarioConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Value,
    /// Command line that reruns the suite containing this check.
    pub replay: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, witness: Value) -> Self {
        Check {
            name: name.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            witness,
            replay: String::new(),
        }
    }

    pub fn failed(name: impl Into<String>, error: impl ToString) -> Self {
        Check::new(
            name,
            false,
            serde_json::json!({ "error": error.to_string() }),
        )
    }

    pub fn skipped(name: impl Into<String>, reason: &str) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            witness: serde_json::json!({ "reason": reason }),
            replay: String::new(),
        }
    }
}

/// Fields that differ between otherwise identical runs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub timestamp_unix: u64,
    pub wall_ms: u64,
    /// Per suite; suites run concurrently, so these can sum to more than `wall_ms`.
    pub timings_ms: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: ScenarioConfig,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub run: RunInfo,
}

impl Report {
    pub fn new(command: &str, config: ScenarioConfig, checks: Vec<Check>, run: RunInfo) -> Self {
        let passed = checks.iter().all(|c| c.status != Status::Fail);
        Report {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            checks,
            passed,
            run,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without [`RunInfo`], for comparing runs.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("run");
        }
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = writeln!(out, "{tag}  {}", c.name);
            if c.status == Status::Fail {
                let _ = writeln!(out, "      replay: {}", c.replay);
            }
        }
        let failed = self
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count();
        let _ = writeln!(
            out,
            "{} checks, {} failed, {:.1} s",
            self.checks.len(),
            failed,
            self.run.wall_ms as f64 / 1000.0
        );
        out
    }
}
