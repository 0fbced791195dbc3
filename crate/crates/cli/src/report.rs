use std::fmt::Write as _;

use corner_core::ledger::Ledger;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Everything a command prints. Two runs with the same command, input and
/// seed differ only in `timing_ms`.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub seed: u64,
    pub result: Value,
    pub ledger: Ledger,
    /// The violated hypothesis or failed computation, if any.
    pub error: Option<String>,
    pub timing_ms: u64,
}

impl ReportDocument {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.ledger.all_passed()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: corner {}", self.command.join(" "));
        if let Some(d) = &self.input_digest {
            let _ = writeln!(out, "input sha256: {d}");
        }
        let _ = writeln!(out, "seed: {}", self.seed);
        if let Value::Object(map) = &self.result {
            for (k, v) in map {
                render(&mut out, k, v, 0);
            }
        }
        if !self.ledger.is_empty() {
            let _ = writeln!(out, "checks:");
            for c in &self.ledger.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                match &c.detail {
                    Some(d) => {
                        let _ = writeln!(out, "  [{mark}] {} ({d})", c.name);
                    }
                    None => {
                        let _ = writeln!(out, "  [{mark}] {}", c.name);
                    }
                }
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        let passed = self.ledger.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            out,
            "{passed}/{} checks passed{}",
            self.ledger.len(),
            if self.passed() { "" } else { "; FAILED" }
        );
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .filter_map(scalar)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        _ => None,
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    let key = key.replace('_', " ");
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    let _ = writeln!(out, "{pad}{key}:");
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                render(out, k, x, depth + 1);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                render(out, &format!("{}", i + 1), x, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}
