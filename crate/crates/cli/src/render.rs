use serde_json::Value;

use crate::cli::Format;

/// Rows for CSV and table output, in a fixed column order.
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
}

impl Report {
    pub fn json(json: Value) -> Self {
        Report { json, table: None }
    }

    pub fn with_table(json: Value, table: Table) -> Self {
        Report {
            json,
            table: Some(table),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Top-level fields as `key,value` rows when a report has no table.
fn key_values(json: &Value) -> Table {
    let mut t = Table::new(&["key", "value"]);
    if let Value::Object(map) = json {
        for (k, v) in map {
            t.push(vec![k.clone(), scalar(v)]);
        }
    } else {
        t.push(vec!["value".into(), scalar(json)]);
    }
    t
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            // serde_json maps are ordered by key
            let mut s = serde_json::to_string(&report.json).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let fallback;
            let t = match &report.table {
                Some(t) => t,
                None => {
                    fallback = key_values(&report.json);
                    &fallback
                }
            };
            let mut out = String::new();
            for row in std::iter::once(&t.headers).chain(&t.rows) {
                let line: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            out
        }
        Format::Table => {
            let fallback;
            let t = match &report.table {
                Some(t) => t,
                None => {
                    fallback = key_values(&report.json);
                    &fallback
                }
            };
            let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
            for row in &t.rows {
                for (w, f) in widths.iter_mut().zip(row) {
                    *w = (*w).max(f.chars().count());
                }
            }
            let mut out = String::new();
            for row in std::iter::once(&t.headers).chain(&t.rows) {
                let cells: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(f, &w)| format!("{f:<w$}"))
                    .collect();
                out.push_str(cells.join("  ").trim_end());
                out.push('\n');
            }
            out
        }
    }
}
