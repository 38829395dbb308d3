//! Verification reports. Everything except the `timing` block is a pure
//! function of the configuration and seed.

use std::collections::BTreeMap;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "blowdown-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub samples: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl Check {
    pub fn new(name: &str, pass: bool, samples: usize, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            samples,
            detail: detail.into(),
            witness: None,
            elapsed_ms: 0,
        }
    }

    pub fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Check { status: Status::Skipped, ..Check::new(name, true, 0, detail) }
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// Runs `f` and records its wall time.
    pub fn timed(f: impl FnOnce() -> Check) -> Check {
        let t = Instant::now();
        let mut c = f();
        c.elapsed_ms = t.elapsed().as_millis();
        c
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub started_unix_s: u64,
    pub total_ms: u128,
    pub per_check_ms: BTreeMap<String, u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub seed: u64,
    pub field: String,
    pub config: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub outputs: BTreeMap<String, Value>,
    pub notes: Vec<String>,
    pub passed: bool,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: &str, seed: u64, field: String) -> Self {
        let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Report {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            seed,
            field,
            config: BTreeMap::new(),
            checks: Vec::new(),
            outputs: BTreeMap::new(),
            notes: Vec::new(),
            passed: true,
            timing: Timing { started_unix_s: started, total_ms: 0, per_check_ms: BTreeMap::new() },
        }
    }

    pub fn push(&mut self, c: Check) {
        self.passed &= c.passed();
        self.timing.per_check_ms.insert(c.name.clone(), c.elapsed_ms);
        self.timing.total_ms += c.elapsed_ms;
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        for c in cs {
            self.push(c);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The JSON with the `timing` block removed, for reproducibility comparisons.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("timing");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("[{tag}] {} ({} samples): {}\n", c.name, c.samples, c.detail));
        }
        out.push_str(if self.passed { "overall: PASS\n" } else { "overall: FAIL\n" });
        out
    }
}
