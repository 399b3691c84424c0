//! Output plumbing: CSV tables, JSON reports, value ranges.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    #[value(alias = "json-like")]
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Decimals printed for reals in CSV output.
    #[arg(long)]
    pub precision: Option<usize>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A table rendered as CSV.
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

pub enum Cell {
    Real(f64),
    Int(i64),
    Text(String),
    Flag(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Real)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

fn real(v: f64, precision: usize) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let s = format!("{v:.precision$}");
    // Avoid "-0.00" for values that round to zero.
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

impl Cell {
    fn text(&self, precision: usize) -> String {
        match self {
            Cell::Real(v) => real(*v, precision),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width");
        self.rows.push(row);
    }

    pub fn to_csv(&self, precision: usize) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.text(precision)))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

/// Where a command's primary output goes.
pub struct Sink<'a> {
    pub args: &'a OutputArgs,
    pub default_precision: usize,
}

impl Sink<'_> {
    pub fn precision(&self) -> usize {
        self.args.precision.unwrap_or(self.default_precision)
    }

    /// Emits CSV built from `tables` (separated by a blank line) or the JSON `report`.
    pub fn emit(&self, tables: &[&Table], report: Value) -> Result<()> {
        let text = match self.args.format {
            Format::Csv => {
                let parts: Vec<String> = tables
                    .iter()
                    .map(|t| t.to_csv(self.precision()))
                    .collect::<Result<_>>()?;
                parts.join("\n")
            }
            Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        };
        write_text(self.args.out.as_deref(), &text)
    }
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Parses `a:step:b` (inclusive) or a comma-separated list.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [a, step, b] => {
            let (a, step, b): (f64, f64, f64) = (
                a.trim().parse().context("range start")?,
                step.trim().parse().context("range step")?,
                b.trim().parse().context("range end")?,
            );
            if !(step > 0.0) || b < a {
                bail!("range {text:?} needs a positive step and start <= end");
            }
            let count = ((b - a) / step + 1e-9).floor() as usize;
            // Snap to the step's decimals so 0.1:0.1:1.0 yields 0.3, not 0.30000000000000004.
            let decimals = text
                .split(':')
                .map(|p| p.trim().split('.').nth(1).map_or(0, str::len))
                .max()
                .unwrap_or(0) as i32;
            let k = 10f64.powi(decimals);
            Ok((0..=count)
                .map(|i| ((a + i as f64 * step) * k).round() / k)
                .collect())
        }
        [_] => text
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .with_context(|| format!("invalid number {v:?}"))
            })
            .collect(),
        _ => bail!("expected a:step:b or a comma-separated list, got {text:?}"),
    }
}
