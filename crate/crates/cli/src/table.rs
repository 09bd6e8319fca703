use std::fmt::Write;

use serde_json::Value;

use crate::run::ResultDocument;

const HEADER: [&str; 4] = ["degree", "Takasu", "Adamson", "φ"];
const MISSING: &str = "-";

fn pad(s: &str, w: usize) -> String {
    let n = s.chars().count();
    format!("{s}{}", " ".repeat(w.saturating_sub(n)))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Fixed-width degree table, then flags and top-level scalar details as
/// `key: value` lines. Columns are padded to their widest cell; trailing
/// spaces are trimmed.
pub fn print_table(doc: &ResultDocument) -> String {
    let mut out = String::new();
    if !doc.rows.is_empty() {
        let cells: Vec<[String; 4]> = doc
            .rows
            .iter()
            .map(|r| {
                [
                    r.degree.to_string(),
                    r.takasu.clone().unwrap_or_else(|| MISSING.into()),
                    r.adamson.clone().unwrap_or_else(|| MISSING.into()),
                    r.phi
                        .as_ref()
                        .map_or_else(|| MISSING.into(), |p| p.description.clone()),
                ]
            })
            .collect();
        let mut widths = HEADER.map(|h| h.chars().count());
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |row: &[String]| -> String {
            let parts: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| pad(c, w)).collect();
            parts.join(" | ").trim_end().to_string()
        };
        let header: Vec<String> = HEADER.iter().map(|s| s.to_string()).collect();
        writeln!(out, "{}", line(&header)).unwrap();
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        writeln!(out, "{}", rule.join("-+-")).unwrap();
        for row in &cells {
            writeln!(out, "{}", line(row)).unwrap();
        }
    }
    if let Value::Object(map) = &doc.details {
        for (k, v) in map {
            if !v.is_object()
                && !(v.is_array() && v.as_array().is_some_and(|a| a.iter().any(Value::is_object)))
            {
                let text = match v {
                    Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(", "),
                    other => scalar(other),
                };
                writeln!(out, "{k}: {text}").unwrap();
            }
        }
    }
    for (k, v) in &doc.flags {
        writeln!(out, "{k}: {}", if *v { "ok" } else { "FAILED" }).unwrap();
    }
    out
}
