use serde_json::Value;

use crate::Format;

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("JSON values serialize"),
        Format::Text => text(report),
    }
}

/// One `key: value` line per top-level field.
fn text(report: &Value) -> String {
    match report {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}
