//! The JSON report written by every command.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ikeda::Witness;

use super::input::Source;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Published without a pass/fail assertion.
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub dims: BTreeMap<String, usize>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn new(name: &str, status: Status) -> Self {
        CheckRecord {
            name: name.to_string(),
            status,
            dims: BTreeMap::new(),
            witnesses: Vec::new(),
            note: None,
        }
    }

    pub fn pass_if(name: &str, ok: bool) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail })
    }

    pub fn dim(mut self, key: &str, value: usize) -> Self {
        self.dims.insert(key.to_string(), value);
        self
    }

    pub fn witnesses(mut self, w: Vec<Witness>) -> Self {
        self.witnesses = w;
        self
    }
}

/// Result of one command on one binary form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub source: Source,
    pub field: String,
    pub d: usize,
    pub f_digest: String,
    /// Nonzero terms `[e0, e1, c]`.
    pub f_terms: Vec<(usize, usize, String)>,
    pub checks: Vec<CheckRecord>,
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl RunReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub command: String,
    pub d: Option<usize>,
    pub field: Option<String>,
    pub f_path: Option<String>,
    pub seed: Option<u64>,
    pub sweep: Option<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub options: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub artifact: String,
    pub version: String,
    pub config: ConfigEcho,
    pub runs: Vec<RunReport>,
    pub passed_runs: usize,
    pub all_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check for a single run, one line per run for sweeps,
    /// plus a totals line.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let status_word = |s: Status| match s {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        };
        for run in &self.runs {
            let label = match &run.source {
                Source::File { path } => path.display().to_string(),
                Source::Random { seed, .. } => format!("seed {seed}"),
            };
            if self.runs.len() > 1 {
                let failed: Vec<&str> = run
                    .checks
                    .iter()
                    .filter(|c| c.status == Status::Fail)
                    .map(|c| c.name.as_str())
                    .collect();
                let verdict = if failed.is_empty() {
                    "PASS".to_string()
                } else {
                    format!("FAIL ({})", failed.join(", "))
                };
                out.push_str(&format!("[{label}] d={} field={} {verdict}\n", run.d, run.field));
                continue;
            }
            out.push_str(&format!("[{label}] d={} field={}\n", run.d, run.field));
            for c in &run.checks {
                let dims: Vec<String> = c.dims.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let line = format!("  {} {} {}", status_word(c.status), c.name, dims.join(" "));
                out.push_str(line.trim_end());
                out.push('\n');
                if let Some(note) = &c.note {
                    out.push_str(&format!("    note: {note}\n"));
                }
            }
        }
        out.push_str(&format!(
            "{}: {}/{} runs passed\n",
            self.config.command,
            self.passed_runs,
            self.runs.len()
        ));
        out
    }
}
