//! The versioned report envelope and its JSON/text renderers.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use cbgon_core::geometry::Verdict;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Every subcommand emits this envelope. Field order is the wire contract.
#[derive(Serialize)]
pub struct Report {
    pub format_version: u32,
    pub operation: String,
    pub inputs: Value,
    pub seed: Option<u64>,
    pub verdict: Verdict,
    pub data: Value,
    pub caveats: Vec<String>,
}

impl Report {
    pub fn new(operation: &str, seed: Option<u64>) -> Self {
        Report {
            format_version: FORMAT_VERSION,
            operation: operation.to_string(),
            inputs: Value::Null,
            seed,
            verdict: Verdict::Report,
            data: Value::Null,
            caveats: Vec::new(),
        }
    }

    pub fn inputs(mut self, v: Value) -> Self {
        self.inputs = v;
        self
    }

    pub fn data(mut self, v: Value) -> Self {
        self.data = v;
        self
    }

    pub fn verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }

    pub fn caveat(mut self, c: &str) -> Self {
        self.caveats.push(c.to_string());
        self
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let verdict = match report.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Report => "REPORT",
    };
    out.push_str(&format!("operation : {}\n", report.operation));
    out.push_str(&format!("verdict   : {verdict}\n"));
    out.push_str(&format!(
        "seed      : {}\n",
        report.seed.map_or("-".to_string(), |s| s.to_string())
    ));
    out.push_str("data\n");
    render_value(&mut out, &report.data, 1);
    if !report.caveats.is_empty() {
        out.push_str("caveats\n");
        for c in &report.caveats {
            out.push_str(&format!("  - {c}\n"));
        }
    }
    out
}

fn render_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}\n"));
                        render_value(out, val, depth + 1);
                    }
                    _ => out.push_str(&format!("{pad}{k} : {val}\n")),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(out, item, depth + 1);
                    }
                    _ => out.push_str(&format!("{pad}- {item}\n")),
                }
            }
        }
        Value::Null => out.push_str(&format!("{pad}-\n")),
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}

pub fn write_report(report: &Report, format: Format, out: Option<&Path>) -> std::io::Result<()> {
    let body = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    };
    match out {
        Some(path) => std::fs::write(path, body),
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(body.as_bytes())
        }
    }
}
