//! RFC-4180-style CSV output with full double precision.
//!
//! Floats are written with 17 significant digits so a read-back reproduces
//! the original bits; line endings are LF.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F64(f64),
    Int(i64),
    Str(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F64(v)
    }
}
impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_string())
    }
}

/// A rectangular table with a header row.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// 17 significant digits: enough for bit-exact f64 round-trips.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn needs_quoting(s: &str) -> bool {
    s.contains(',') || s.contains('"') || s.contains('\n')
}

fn write_field(out: &mut String, cell: &Cell) {
    match cell {
        Cell::F64(v) => {
            let _ = write!(out, "{}", format_f64(*v));
        }
        Cell::Int(v) => {
            let _ = write!(out, "{v}");
        }
        Cell::Str(s) => {
            if needs_quoting(s) {
                let _ = write!(out, "\"{}\"", s.replace('"', "\"\""));
            } else {
                out.push_str(s);
            }
        }
    }
}

/// Write a table to `path`. A 0-row table produces a header-only file.
pub fn write_csv(table: &Table, path: &Path) -> Result<()> {
    for row in &table.rows {
        if row.len() != table.headers.len() {
            return Err(Error::InvalidParam(format!(
                "ragged table: row has {} cells, header has {}",
                row.len(),
                table.headers.len()
            )));
        }
    }
    let mut out = String::new();
    out.push_str(&table.headers.join(","));
    out.push('\n');
    for row in &table.rows {
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write_field(&mut out, cell);
        }
        out.push('\n');
    }
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Read back a CSV written by [`write_csv`]: headers plus string fields.
/// Quoted fields are not un-escaped beyond the outer quotes (the writers in
/// this crate only quote when necessary, and numeric data never is).
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let headers = lines
        .next()
        .ok_or_else(|| Error::InvalidParam("empty CSV file".into()))?
        .split(',')
        .map(|s| s.to_string())
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|s| s.trim_matches('"').to_string()).collect())
        .collect();
    Ok((headers, rows))
}
