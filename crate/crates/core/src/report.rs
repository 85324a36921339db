//! Structured results of verification tasks.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Failed,
    Skipped,
    RecordedFromPaper,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
            Status::Skipped => "skipped",
            Status::RecordedFromPaper => "recorded-from-paper",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultItem {
    pub name: String,
    pub status: Status,
    pub value: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub task: String,
    pub tool_version: String,
    pub inputs: Value,
    pub results: Vec<ResultItem>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl Report {
    pub fn new(task: &str, inputs: Value) -> Self {
        Report {
            task: task.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            inputs,
            results: Vec::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, value: Value) {
        self.results.push(ResultItem {
            name: name.into(),
            status,
            value,
            citation: None,
        });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, value: Value) {
        self.push(name, if ok { Status::Verified } else { Status::Failed }, value);
    }

    pub fn recorded(&mut self, name: impl Into<String>, value: Value, citation: &str) {
        self.results.push(ResultItem {
            name: name.into(),
            status: Status::RecordedFromPaper,
            value,
            citation: Some(citation.to_string()),
        });
    }

    /// Marks an item skipped because a resource budget ran out.
    pub fn budget_skip(&mut self, name: impl Into<String>, why: String) {
        self.push(name, Status::Skipped, serde_json::json!({ "budget_exceeded": why }));
    }

    /// True when an item was skipped for lack of budget.
    pub fn budget_exhausted(&self) -> bool {
        self.results
            .iter()
            .any(|r| r.status == Status::Skipped && r.value.get("budget_exceeded").is_some())
    }

    /// Runs `f`, recording its wall time under `step`.
    pub fn timed<T>(&mut self, step: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        *self.timings_ms.entry(step.to_string()).or_default() += t.elapsed().as_millis() as u64;
        out
    }

    pub fn merge(&mut self, other: Report) {
        self.results.extend(other.results);
        for (k, v) in other.timings_ms {
            *self.timings_ms.entry(format!("{}.{k}", other.task)).or_default() += v;
        }
    }

    pub fn any_failed(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Failed)
    }

    pub fn item(&self, name: &str) -> Option<&ResultItem> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Copy with all timings zeroed, for determinism comparisons.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        r.timings_ms.values_mut().for_each(|v| *v = 0);
        r
    }
}
