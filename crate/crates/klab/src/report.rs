//! CSV and JSON emitters for suite reports.

use std::fmt::Write as _;
use std::io::Write as _;

use crate::bounds::{BoundReport, CheckStatus};
use crate::error::{Error, Result};
use crate::suite::SuiteReport;

/// Column order is pinned; downstream tooling indexes by position.
pub const CSV_HEADER: &str =
    "theorem_id,function_id,g_function_id,n,lhs,rhs,margin,passed,x_worst,grid_points";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format `{other}` (expected csv or json)"))),
        }
    }
}

/// 17 significant digits: enough to round-trip any f64 exactly.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt_float(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn csv_row(rec: &BoundReport) -> String {
    // A derivative order, when present, is folded into the function id so
    // the column set stays fixed across theorems.
    let function = match rec.r {
        Some(r) => format!("{}#r{}", rec.function, r),
        None => rec.function.clone(),
    };
    let passed = match rec.status {
        CheckStatus::Passed => "true",
        CheckStatus::Failed => "false",
        CheckStatus::Skipped => "skipped",
    };
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        rec.theorem.as_str(),
        function,
        rec.g_function.as_deref().unwrap_or(""),
        rec.n,
        fmt_float(rec.lhs),
        fmt_opt_float(rec.rhs),
        fmt_opt_float(rec.margin),
        passed,
        fmt_opt_float(rec.x_worst),
        rec.grid_points,
    )
}

pub fn to_csv(report: &SuiteReport) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for rec in &report.records {
        let _ = writeln!(out, "{}", csv_row(rec));
    }
    out
}

pub fn to_json(report: &SuiteReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)?)
}

/// Write the report next to `output_path` with the format's extension,
/// returning the path written.
pub fn emit(report: &SuiteReport, format: Format, output_path: &str) -> Result<String> {
    let (path, body) = match format {
        Format::Csv => (format!("{output_path}.csv"), to_csv(report)),
        Format::Json => (format!("{output_path}.json"), to_json(report)?),
    };
    let mut file = std::fs::File::create(&path).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    file.write_all(body.as_bytes()).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}
