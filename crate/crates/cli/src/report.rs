use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use specialcheck::QuadExt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// What a subcommand found. `verdict` is `None` for purely informational commands.
#[derive(Debug, Default)]
pub struct Report {
    pub command: String,
    pub digest: Option<String>,
    pub verdict: Option<bool>,
    pub details: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report { command, ..Default::default() }
    }

    pub fn input(&mut self, bytes: &[u8]) {
        let mut h = Sha256::new();
        if let Some(prev) = &self.digest {
            h.update(prev.as_bytes());
        }
        h.update(bytes);
        self.digest = Some(format!("sha256:{:x}", h.finalize()));
    }

    pub fn verdict(&mut self, v: bool) {
        self.verdict = Some(v);
    }

    pub fn add(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.details.push((key.to_string(), v));
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(false) => 1,
            _ => 0,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let details: Map<String, Value> = self.details.iter().cloned().collect();
                let body = json!({
                    "command": self.command,
                    "input_digest": self.digest,
                    "verdict": self.verdict.map(verdict_word),
                    "details": details,
                });
                serde_json::to_string_pretty(&body).unwrap() + "\n"
            }
            Format::Text => {
                let mut out = String::new();
                writeln!(out, "command: {}", self.command).unwrap();
                if let Some(d) = &self.digest {
                    writeln!(out, "input: {d}").unwrap();
                }
                if let Some(v) = self.verdict {
                    writeln!(out, "verdict: {}", verdict_word(v)).unwrap();
                }
                for (k, v) in &self.details {
                    match v {
                        Value::Array(items) if items.iter().all(|i| i.is_string()) => {
                            writeln!(out, "{k}:").unwrap();
                            for i in items {
                                writeln!(out, "  {}", i.as_str().unwrap()).unwrap();
                            }
                        }
                        Value::String(s) => writeln!(out, "{k}: {s}").unwrap(),
                        other => writeln!(out, "{k}: {other}").unwrap(),
                    }
                }
                out
            }
        }
    }
}

fn verdict_word(v: bool) -> &'static str {
    if v {
        "pass"
    } else {
        "fail"
    }
}

/// Exact value plus a decimal that says it is approximate.
pub fn exact(x: &QuadExt) -> Value {
    json!({ "exact": x.to_string(), "approx": format!("≈{:.6}", x.to_f64()) })
}

pub fn exact_opt(x: &Option<QuadExt>) -> Value {
    x.as_ref().map(exact).unwrap_or(Value::Null)
}
