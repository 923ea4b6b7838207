//! Rendering helpers shared by the commands.

use std::fmt::Write as _;

use serde_json::Value;

use super::Format;
use crate::table::{latex_tabular, latex_tabular_with_header, GradedDimensionTable, GradingLabel};

/// Header for degree-graded tables.
pub const DEGREE_LATEX_HEADER: &str = r"$h(\mathsf{HP}_0;t^{\frac{1}{4}})$";

pub fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    let s = cell(v);
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// A simple rectangular table.
pub struct Rows {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Rows {
    pub fn new(headers: &[&'static str]) -> Self {
        Self { headers: headers.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn text(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
        let mut width: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for r in &cells {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |items: Vec<&str>| -> String {
            let mut s = String::new();
            for (i, (c, w)) in items.iter().zip(&width).enumerate() {
                if i + 1 == items.len() {
                    s.push_str(c);
                } else {
                    let _ = write!(s, "{c:<w$}  ");
                }
            }
            s.trim_end().to_string() + "\n"
        };
        let mut s = line(self.headers.clone());
        for r in &cells {
            s.push_str(&line(r.iter().map(String::as_str).collect()));
        }
        s
    }

    pub fn csv(&self) -> String {
        let mut s = self.headers.join(",") + "\n";
        for r in &self.rows {
            s.push_str(&r.iter().map(csv_cell).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }

    /// One object per row.
    pub fn objects(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|r| Value::Object(self.headers.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect()))
            .collect()
    }
}

/// Dimension tables in any format. JSON is an object for one table and an
/// array otherwise.
pub fn render_tables(format: Format, tables: &[GradedDimensionTable]) -> String {
    match format {
        Format::Table => {
            let mut s = String::new();
            for (i, t) in tables.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                s.push_str(&t.to_text());
                let _ = writeln!(s, "series: {}", t.display_series());
            }
            s
        }
        Format::Csv => {
            let head = match tables.first().map(|t| t.grading) {
                Some(GradingLabel::DualWeight) => "dual_weight",
                _ => "degree",
            };
            let mut s = format!("n,{head},dim\n");
            for t in tables {
                for (g, d) in &t.dims {
                    let _ = writeln!(s, "{},{g},{d}", t.n);
                }
            }
            s
        }
        Format::Json => {
            let v: Vec<Value> = tables.iter().map(GradedDimensionTable::to_json).collect();
            match v.len() {
                1 => json_line(&v[0]),
                _ => json_line(&Value::Array(v)),
            }
        }
        Format::Latex => match tables.first().map(|t| t.grading) {
            Some(GradingLabel::DualWeight) => latex_tabular(tables),
            _ => latex_tabular_with_header(DEGREE_LATEX_HEADER, tables),
        },
    }
}
