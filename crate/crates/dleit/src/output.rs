//! CSV and JSON writers.
//!
//! CSV files open with `#` lines: the command, then one
//! `# config: key = value` per resolved option, then
//! `# result: key = value` scalars, then the header row. JSON output is a
//! single object with the same content.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::error::CliResult;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub summary: Vec<(&'static str, f64)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

/// Shortest round-trip decimal form; `NaN` for missing values.
pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).expect("finite floats serialize")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn format_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn config_pairs(config: &Value) -> Vec<(String, String)> {
    match config {
        Value::Object(map) => map.iter().map(|(k, v)| (k.clone(), format_value(v))).collect(),
        _ => Vec::new(),
    }
}

pub fn write_csv<W: Write>(report: &Report, mut w: W) -> CliResult<()> {
    writeln!(w, "# dleit {}", report.command)?;
    for (k, v) in config_pairs(&report.config) {
        writeln!(w, "# config: {k} = {v}")?;
    }
    for (k, v) in &report.summary {
        writeln!(w, "# result: {k} = {}", format_number(*v))?;
    }
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(&report.columns)?;
    for row in &report.rows {
        csv.write_record(row.iter().map(|&x| format_number(x)))?;
    }
    csv.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(report: &Report, mut w: W) -> CliResult<()> {
    let summary: Map<String, Value> = report
        .summary
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    let doc = json!({
        "command": report.command,
        "config": report.config,
        "summary": summary,
        "columns": report.columns,
        "data": report.rows,
    });
    serde_json::to_writer(&mut w, &doc)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn write_report(report: &Report, format: Format, out: Option<&Path>) -> CliResult<()> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match format {
        Format::Csv => write_csv(report, sink),
        Format::Json => write_json(report, sink),
    }
}
