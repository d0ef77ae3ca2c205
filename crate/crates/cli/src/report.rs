//! Key–value reports rendered as text or JSON with the same numbers.

use std::fmt::Write as _;

use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Default, Clone)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

/// Finite numbers stay numbers; infinities and NaN become strings so that
/// both renderings carry them.
pub fn number(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v.is_nan() {
        json!("NaN")
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num(&mut self, key: &str, v: f64) -> &mut Self {
        self.entries.push((key.to_string(), number(v)));
        self
    }

    pub fn value(&mut self, key: &str, v: Value) -> &mut Self {
        self.entries.push((key.to_string(), v));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report values serialise");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                for (k, v) in &self.entries {
                    render_text(&mut out, k, v, 0);
                }
                out
            }
        }
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.entries.len()))?;
        for (k, v) in &self.entries {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, item) in items.iter().enumerate() {
                render_text(out, &format!("[{i}]"), item, depth + 1);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            let _ = writeln!(out, "{pad}{key} = [{}]", parts.join(", "));
        }
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, item) in map {
                render_text(out, k, item, depth + 1);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{key} = {}", scalar(other));
        }
    }
}
