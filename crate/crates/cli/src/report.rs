//! Tabular reports and their CSV/JSON renderings.

use std::fmt::Write as _;

use curvlab::table::{format_sig, round_sig};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_sig(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(round_sig(*x)),
            Cell::Num(_) | Cell::Empty => Value::Null,
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<u32> for Cell {
    fn from(i: u32) -> Self {
        Cell::Int(i64::from(i))
    }
}

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        i64::try_from(i).map_or_else(|_| Cell::Text(i.to_string()), Cell::Int)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::from(i as u64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", fields.join(",")).unwrap();
        }
        out
    }

    /// `{"metadata": …, "rows": [{column: value, …}, …]}`.
    pub fn to_json(&self, metadata: Value) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| ((*c).to_owned(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "metadata": metadata, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
        s.push('\n');
        s
    }
}
