//! Deterministic, versioned report envelopes for the CLI.
//!
//! Every verdict carries the dimension bound and budget it was computed
//! under, so no unbounded claim is ever emitted. Reports are byte-identical
//! across runs on identical inputs.

use serde::Serialize;
use serde_json::Value;

pub const REPORT_FORMAT: &str = "tstrat-report-v1";

/// Exit-code contract of the CLI.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => EXIT_PASS,
            Verdict::Fail => EXIT_FAIL,
            Verdict::Indeterminate => EXIT_INDETERMINATE,
        }
    }
}

/// The envelope around every CLI output.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: String,
    pub command: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    pub data: Value,
}

impl Report {
    pub fn new(command: &str, verdict: Verdict, data: Value) -> Self {
        Report {
            format: REPORT_FORMAT.into(),
            command: command.to_string(),
            verdict,
            dim_bound: None,
            budget: None,
            data,
        }
    }

    pub fn with_bounds(mut self, dim_bound: Option<usize>, budget: Option<u64>) -> Self {
        self.dim_bound = dim_bound;
        self.budget = budget;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    /// A short human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if let Some(d) = self.dim_bound {
            out.push_str(&format!("dim-bound: {}\n", d));
        }
        if let Some(b) = self.budget {
            out.push_str(&format!("budget: {}\n", b));
        }
        out.push_str(&format!("verdict: {:?}\n", self.verdict));
        render_value(&self.data, 0, &mut out);
        out
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{}{}:\n", pad, k));
                        render_value(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{}{}: {}\n", pad, k, v)),
                }
            }
        }
        Value::Array(items) => {
            if items.len() > 24 {
                out.push_str(&format!("{}({} entries)\n", pad, items.len()));
            } else {
                for item in items {
                    match item {
                        Value::Object(_) | Value::Array(_) => render_value(item, indent, out),
                        _ => out.push_str(&format!("{}- {}\n", pad, item)),
                    }
                }
            }
        }
        _ => out.push_str(&format!("{}{}\n", pad, v)),
    }
}
