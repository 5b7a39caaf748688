//! Tables and their CSV / JSON renderings.
//!
//! Floats are written with 17 significant digits in CSV and as shortest
//! round-trip numbers in JSON; exact rationals are strings in both.

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::config::Format;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    Float(f64),
    Bool(bool),
    Text(String),
    /// An exact value such as a rational, kept as text.
    Exact(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::UInt(x as u64)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::UInt(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::UInt(x as u64)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.into())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(x) => x.to_string(),
            Cell::UInt(x) => x.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) | Cell::Exact(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(x) => json!(x),
            Cell::UInt(x) => json!(x),
            Cell::Float(x) if x.is_finite() => json!(x),
            Cell::Float(x) => json!(format_float(*x)),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) | Cell::Exact(s) => json!(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn floats(&self, name: &str) -> Vec<f64> {
        let Some(i) = self.column(name) else { return Vec::new() };
        self.rows
            .iter()
            .map(|r| match &r[i] {
                Cell::Float(x) => *x,
                Cell::Int(x) => *x as f64,
                Cell::UInt(x) => *x as f64,
                _ => f64::NAN,
            })
            .collect()
    }
}

/// Output of one command: header metadata followed by tables.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub config_hash: String,
    pub meta: Vec<(String, String)>,
    pub tables: Vec<Table>,
}

/// SHA-256 of the compact JSON serialization of a resolved config.
pub fn config_hash<T: Serialize>(cfg: &T) -> String {
    let bytes = serde_json::to_vec(cfg).expect("config serializes");
    hex::encode(Sha256::digest(&bytes))
}

impl Report {
    pub fn new<T: Serialize>(command: &str, cfg: &T) -> Self {
        Report { command: command.into(), config_hash: config_hash(cfg), meta: Vec::new(), tables: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.into(), value.to_string()));
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json()).expect("json renders");
                s.push('\n');
                s
            }
        }
    }

    pub fn csv(&self) -> String {
        let mut out = format!("# npoint {}\n# config_sha256={}\n", self.command, self.config_hash);
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={v}\n"));
        }
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("# table={}\n", t.name));
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(&t.columns).expect("in-memory write");
            for row in &t.rows {
                w.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
            }
            let bytes = w.into_inner().expect("in-memory flush");
            out.push_str(&String::from_utf8(bytes).expect("utf8 fields"));
        }
        out
    }

    pub fn json(&self) -> Value {
        let mut meta = Map::new();
        for (k, v) in &self.meta {
            meta.insert(k.clone(), json!(v));
        }
        let tables: Vec<Value> = self
            .tables
            .iter()
            .map(|t| {
                let rows: Vec<Value> = t.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
                json!({"name": t.name, "columns": t.columns, "rows": rows})
            })
            .collect();
        json!({"command": self.command, "config_sha256": self.config_hash, "meta": meta, "tables": tables})
    }
}
