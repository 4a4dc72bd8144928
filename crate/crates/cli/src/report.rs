use std::io::{self, Write};

use nhairy_core::Complex;
use rug::Float;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Format;

#[derive(Serialize, Debug)]
pub struct ParamsOut {
    pub a: String,
    pub b: String,
    pub c: String,
    pub deriv: String,
}

#[derive(Serialize, Debug)]
pub struct Settings {
    /// Printed significant digits.
    pub digits: u32,
    /// Working precision in decimal digits.
    pub precision: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsOut>,
    pub settings: Settings,
    pub results: Value,
    pub diagnostics: Vec<String>,
    pub walltime_ms: u128,
}

/// Rows behind the CSV and text renderings.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn float(x: &Float, digits: u32) -> String {
    x.to_string_radix(10, Some(digits.max(1) as usize))
}

pub fn complex(z: &Complex, digits: u32) -> Value {
    json!({ "re": float(&z.re, digits), "im": float(&z.im, digits) })
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn render(report: &Report, table: &Table, format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(&table.header)?;
            for r in &table.rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "{}", report.command)?;
            if let Some(p) = &report.params {
                writeln!(out, "a = {}, b = {}, c = {}, y'(0) = {}", p.a, p.b, p.c, p.deriv)?;
            }
            writeln!(out, "working precision {} digits", report.settings.precision)?;
            let mut widths: Vec<usize> = table.header.iter().map(|h| h.len()).collect();
            for r in &table.rows {
                for (w, cell) in widths.iter_mut().zip(r) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            if table.header.is_empty() {
                return Ok(());
            }
            writeln!(out, "{}", line(table.header.clone()))?;
            for r in &table.rows {
                writeln!(out, "{}", line(r.iter().map(|s| s.as_str()).collect()))?;
            }
        }
    }
    Ok(())
}
