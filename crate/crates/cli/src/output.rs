//! Rendering of command payloads as canonical JSON, CSV or plain text.

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "pretty",
        }
    }
}

/// A command result before rendering. `table` is the CSV view: a header and
/// rows of cells.
pub struct Report {
    pub payload: Value,
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Report {
    pub fn new(payload: Value) -> Self {
        Report { payload, table: None }
    }

    pub fn with_table(mut self, header: Vec<String>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header, rows));
        self
    }
}

pub struct Envelope<'a> {
    pub command: &'a str,
    pub group: Option<&'a str>,
    pub prime: Option<u64>,
    pub format: Format,
}

pub fn render(env: &Envelope, report: &Report) -> Result<String, csv::Error> {
    match env.format {
        Format::Json => {
            let v = json!({
                "command": env.command,
                "group": env.group,
                "prime": env.prime,
                "format": env.format.name(),
                "payload": report.payload,
            });
            Ok(serde_json::to_string_pretty(&v).expect("JSON values serialise") + "\n")
        }
        Format::Csv => {
            let (header, rows) = match &report.table {
                Some(t) => t.clone(),
                None => key_value_table(&report.payload),
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header)?;
            for row in &rows {
                w.write_record(row)?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            Ok(String::from_utf8(bytes).expect("CSV of UTF-8 strings"))
        }
        Format::Pretty => {
            let mut out = String::new();
            out.push_str(&format!("{}", env.command));
            if let Some(g) = env.group {
                out.push_str(&format!(" {g}"));
            }
            if let Some(p) = env.prime {
                out.push_str(&format!(" (p = {p})"));
            }
            out.push('\n');
            pretty(&report.payload, 1, &mut out);
            Ok(out)
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn key_value_table(payload: &Value) -> (Vec<String>, Vec<Vec<String>>) {
    let rows = match payload {
        Value::Object(m) => m.iter().map(|(k, v)| vec![k.clone(), scalar(v)]).collect(),
        other => vec![vec!["value".into(), scalar(other)]],
    };
    (vec!["key".into(), "value".into()], rows)
}

fn is_matrix(v: &[Value]) -> bool {
    !v.is_empty() && v.iter().all(|r| r.as_array().is_some_and(|r| r.iter().all(|x| !x.is_array() && !x.is_object())))
}

fn pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => pretty_object(m, indent, out),
        Value::Array(rows) if is_matrix(rows) => {
            let cells: Vec<Vec<String>> =
                rows.iter().map(|r| r.as_array().unwrap().iter().map(scalar).collect()).collect();
            let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
            for r in cells {
                let line: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
                out.push_str(&format!("{pad}{}\n", line.join(" ")));
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(m) => {
                        out.push_str(&format!("{pad}-\n"));
                        pretty_object(m, indent + 1, out);
                    }
                    other => out.push_str(&format!("{pad}- {}\n", scalar(other))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn pretty_object(m: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    for (k, v) in m {
        match v {
            Value::Object(_) | Value::Array(_) if !v.as_array().is_some_and(|a| a.is_empty()) => {
                let inline = v.as_array().is_some_and(|a| a.iter().all(|x| !x.is_array() && !x.is_object()));
                if inline {
                    let items: Vec<String> = v.as_array().unwrap().iter().map(scalar).collect();
                    out.push_str(&format!("{pad}{k}: [{}]\n", items.join(", ")));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    pretty(v, indent + 1, out);
                }
            }
            _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
        }
    }
}
