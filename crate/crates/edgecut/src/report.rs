//! Structured run reports with a stable fingerprint.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

pub const SCHEMA: &str = "edgecut-report/1";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub n: usize,
    pub m: u64,
    pub delta: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerSummary {
    pub lambda: u64,
    pub witness_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    pub input: InputSummary,
    pub mode: Option<String>,
    pub profile: Option<String>,
    pub answer: Option<AnswerSummary>,
    /// Work counters; the contract surface for benchmarks.
    pub counters: BTreeMap<String, u64>,
    /// Command-specific output.
    pub details: Value,
    /// Wall-clock milliseconds. Excluded from the fingerprint.
    pub timings: BTreeMap<String, f64>,
    pub fingerprint: String,
}

impl RunReport {
    pub fn new(command: &str, input: InputSummary) -> Self {
        RunReport {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            input,
            mode: None,
            profile: None,
            answer: None,
            counters: BTreeMap::new(),
            details: Value::Null,
            timings: BTreeMap::new(),
            fingerprint: String::new(),
        }
    }

    /// SHA-256 over the canonical JSON of everything except `timings` and
    /// `fingerprint`.
    pub fn compute_fingerprint(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(map) = &mut v {
            map.remove("timings");
            map.remove("fingerprint");
        }
        let bytes = serde_json::to_vec(&v).expect("report serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn seal(mut self) -> Self {
        self.fingerprint = self.compute_fingerprint();
        self
    }

    pub fn fingerprint_matches(&self) -> bool {
        self.fingerprint == self.compute_fingerprint()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
