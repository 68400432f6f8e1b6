//! The report every command produces, and its text rendering.

use std::fmt::Write as _;

use catcross_core::checklist::{Checklist, Hypothesis};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    ParseFailure,
    Invalid,
    HypothesisRejected,
    CapExceeded,
    /// A computed answer disagreed with its oracle or a counterexample
    /// turned up.
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::ParseFailure => 1,
            Status::Invalid => 2,
            Status::HypothesisRejected => 3,
            Status::CapExceeded => 4,
            Status::VerificationFailed => 5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::ParseFailure => "parse failure",
            Status::Invalid => "invalid system",
            Status::HypothesisRejected => "hypothesis rejected",
            Status::CapExceeded => "cap exceeded",
            Status::VerificationFailed => "verification failed",
        }
    }
}

/// Output of one command. Holds no timing so that identical inputs give
/// identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub hypotheses: Vec<Hypothesis>,
    pub warnings: Vec<String>,
    pub result: Value,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            system: None,
            status: Status::Pass,
            seed: None,
            hypotheses: Vec::new(),
            warnings: Vec::new(),
            result: Value::Object(Default::default()),
        }
    }

    pub fn failed(command: impl Into<String>, status: Status, message: impl Into<String>) -> Self {
        let mut r = Report::new(command);
        r.status = status;
        r.set("error", message.into());
        r
    }

    /// Adds a field to the result object.
    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report values serialize");
        if let Value::Object(map) = &mut self.result {
            map.insert(key.to_string(), value);
        }
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.result.get(key)
    }

    pub fn add_hypotheses(&mut self, checklist: &Checklist) {
        self.hypotheses.extend(checklist.iter().cloned());
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    /// Lowers the status to `status` unless a worse one is already set.
    pub fn escalate(&mut self, status: Status) {
        if self.status == Status::Pass {
            self.status = status;
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(s) = &self.system {
            let _ = writeln!(out, "system: {s}");
        }
        let _ = writeln!(out, "status: {}", self.status.label());
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        if !self.hypotheses.is_empty() {
            out.push_str("hypotheses:\n");
            for h in &self.hypotheses {
                let mark = if h.holds { "ok  " } else { "FAIL" };
                match h.detail.as_deref().filter(|d| !d.is_empty()) {
                    Some(d) => {
                        let _ = writeln!(out, "  [{mark}] {} ({d})", h.name);
                    }
                    None => {
                        let _ = writeln!(out, "  [{mark}] {}", h.name);
                    }
                }
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        if let Value::Object(map) = &self.result {
            for (k, v) in map {
                write_value(&mut out, k, v, 0);
            }
        }
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json()
        } else {
            self.to_text()
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::String(_) | Value::Number(_))) => {
            let parts: Vec<String> = a.iter().map(|x| scalar(x).unwrap_or_default()).collect();
            let line = format!("[{}]", parts.join(", "));
            (line.len() <= 72).then_some(line)
        }
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn write_value(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    if key == "-" {
        let _ = writeln!(out, "{pad}-");
    } else {
        let _ = writeln!(out, "{pad}{key}:");
    }
    match v {
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}  - {s}");
                    }
                    None => write_value(out, "-", item, depth + 1),
                }
            }
        }
        Value::Object(map) => {
            for (k, x) in map {
                write_value(out, k, x, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
