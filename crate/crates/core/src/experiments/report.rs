//! Deterministic serialization of experiment reports.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// A row table for CSV output.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub trait Report: Serialize {
    /// The report's row table, when it has one.
    fn table(&self) -> Option<Table> {
        None
    }
}

/// JSON with sorted keys and a trailing newline, or CSV of the row table.
pub fn render_report<R: Report>(report: &R, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            // going through Value sorts object keys
            let value = serde_json::to_value(report)?;
            let mut text = serde_json::to_string_pretty(&value)?;
            text.push('\n');
            Ok(text)
        }
        ReportFormat::Csv => {
            let table = report
                .table()
                .ok_or_else(|| Error::InvalidArgument("this report has no CSV table".into()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.header)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn emit_report<R: Report>(report: &R, format: ReportFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render_report(report, format)?)?;
    Ok(())
}
