use std::collections::BTreeMap;
use std::fmt::Write as _;

use heightkit::measure::RealEnclosure;
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

pub const SCHEMA_VERSION: u32 = 1;

/// Primary result of a command. Numbers are decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Value {
    /// `lo` rounded down and `hi` rounded up to `digits` decimals.
    Enclosure { lo: String, hi: String, digits: usize },
    Exact { value: String },
    Boolean { value: bool },
    None,
}

impl Value {
    pub fn enclosure(enc: &RealEnclosure) -> Value {
        let digits = enc.display_digits();
        Value::Enclosure { lo: enc.lo_decimal(digits), hi: enc.hi_decimal(digits), digits }
    }

    pub fn exact(value: impl ToString) -> Value {
        Value::Exact { value: value.to_string() }
    }

    fn human(&self) -> String {
        match self {
            Value::Enclosure { lo, hi, .. } => format!("[{lo}, {hi}]"),
            Value::Exact { value } => value.clone(),
            Value::Boolean { value } => value.to_string(),
            Value::None => "-".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub precision_bits: Option<u64>,
    pub wall_time_ms: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

/// One command result, serialized as JSON with `--json` and as aligned
/// `key: value` lines otherwise. Both views render the same strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: u32,
    pub command: String,
    pub inputs: BTreeMap<String, Json>,
    pub value: Value,
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Json>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub diagnostics: Diagnostics,
}

impl OutputRecord {
    pub fn new(command: &str, argv: &[String]) -> Self {
        let mut inputs = BTreeMap::new();
        inputs.insert("argv".to_string(), Json::from(argv.to_vec()));
        OutputRecord {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            value: Value::None,
            exact: false,
            witness: None,
            details: BTreeMap::new(),
            error: None,
            diagnostics: Diagnostics { precision_bits: None, wall_time_ms: "0".into() },
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Json>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Json>) -> &mut Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    /// Record without the fields that legitimately differ between runs.
    pub fn stable(&self) -> OutputRecord {
        let mut r = self.clone();
        r.diagnostics.wall_time_ms = String::new();
        r
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error ({}): {}", e.kind, e.message);
            return out;
        }
        let _ = writeln!(out, "{}: {}{}", self.command, self.value.human(), if self.exact { " (exact)" } else { "" });
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "  witness: {}", w.join(" · "));
        }
        for (k, v) in &self.details {
            human_detail(&mut out, k, v, 1);
        }
        if let Some(bits) = self.diagnostics.precision_bits {
            let _ = writeln!(out, "  precision: {bits} bits");
        }
        out
    }
}

fn human_detail(out: &mut String, key: &str, value: &Json, depth: usize) {
    let pad = "  ".repeat(depth);
    match value {
        Json::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                human_detail(out, k, v, depth + 1);
            }
        }
        Json::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, v) in items.iter().enumerate() {
                human_detail(out, &i.to_string(), v, depth + 1);
            }
        }
        Json::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            let _ = writeln!(out, "{pad}{key}: {}", parts.join(", "));
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar(other));
        }
    }
}

fn scalar(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        other => other.to_string(),
    }
}
