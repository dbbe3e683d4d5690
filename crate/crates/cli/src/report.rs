use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = include_str!("../schema/run-report.schema.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub ok: bool,
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    pub summary: String,
    pub data: Value,
    /// Extra lines for text output.
    #[serde(skip)]
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub stage: String,
    pub micros: u64,
}

impl Verdict {
    pub fn new(check: impl Into<String>, passed: bool, summary: impl Into<String>, data: impl Serialize) -> Self {
        Verdict {
            check: check.into(),
            passed,
            summary: summary.into(),
            data: serde_json::to_value(data).expect("report data serializes"),
            details: Vec::new(),
        }
    }

    pub fn with_details(mut self, details: Vec<String>) -> Self {
        self.details = details;
        self
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Collects verdicts and per-stage wall-clock times for one command.
pub struct Recorder {
    command: String,
    digest: String,
    verdicts: Vec<Verdict>,
    timings: Vec<Timing>,
}

impl Recorder {
    pub fn new(command: &str, digest: String) -> Self {
        Recorder {
            command: command.to_string(),
            digest,
            verdicts: Vec::new(),
            timings: Vec::new(),
        }
    }

    pub fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push(Timing {
            stage: name.to_string(),
            micros: start.elapsed().as_micros() as u64,
        });
        out
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn finish(self, timings: bool) -> RunReport {
        RunReport {
            command: self.command,
            input_digest: self.digest,
            ok: self.verdicts.iter().all(|v| v.passed),
            verdicts: self.verdicts,
            timings: timings.then_some(self.timings),
        }
    }
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} ({})", self.command, self.input_digest);
        for v in &self.verdicts {
            let mark = if v.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{mark} {}: {}", v.check, v.summary);
            for line in &v.details {
                let _ = writeln!(out, "    {line}");
            }
        }
        if let Some(timings) = &self.timings {
            for t in timings {
                let _ = writeln!(out, "time {}: {:.3} ms", t.stage, t.micros as f64 / 1000.0);
            }
        }
        let _ = writeln!(out, "{}", if self.ok { "ok" } else { "FAILED" });
        out
    }
}
