//! Rendering of command payloads as JSON or plain text.

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub struct Report {
    pub command: &'static str,
    pub parameters: Value,
    pub result: Value,
}

impl Report {
    pub fn render(&self, format: Format, elapsed_ms: u128) -> String {
        match format {
            Format::Json => {
                let envelope = json!({
                    "command": self.command,
                    "parameters": self.parameters,
                    "result": self.result,
                    "elapsed_ms": elapsed_ms,
                });
                serde_json::to_string_pretty(&envelope).expect("payload serializes")
            }
            Format::Text => {
                let mut out = String::new();
                match &self.result {
                    Value::Object(map) => render_object(map, &mut out),
                    other => out.push_str(&scalar(other)),
                }
                out
            }
        }
    }
}

fn render_object(map: &Map<String, Value>, out: &mut String) {
    for (key, value) in map {
        match value {
            Value::Array(items) if items.iter().all(is_check) && !items.is_empty() => {
                for item in items {
                    let status = item["status"].as_str().unwrap_or("?");
                    let name = item["name"].as_str().unwrap_or("?");
                    let detail = item["detail"].as_str().unwrap_or("");
                    out.push_str(&format!("{status:<7} {name}  {detail}\n"));
                }
            }
            Value::Array(items) => {
                out.push_str(&format!("{key}:"));
                for item in items {
                    out.push(' ');
                    out.push_str(&scalar(item));
                }
                out.push('\n');
            }
            Value::Object(inner) => {
                for (k, v) in inner {
                    out.push_str(&format!("{key}.{k}: {}\n", scalar(v)));
                }
            }
            other => out.push_str(&format!("{key}: {}\n", scalar(other))),
        }
    }
}

fn is_check(v: &Value) -> bool {
    v.get("status").is_some() && v.get("name").is_some()
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
