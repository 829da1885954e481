use kwise_core::precision::PRECISION_LABEL;
use kwise_core::rational::format_rational;
use kwise_core::{Rational, Real};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Format;
use crate::error::CliError;

/// Significant digits for approximate values.
pub const DIGITS: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    /// Every rational in `results` is exact.
    pub exact: bool,
    /// Precision of approximate reals.
    pub approximate_precision: &'static str,
}

impl Provenance {
    pub fn new(exact: bool) -> Self {
        Self { tool: "kwise", version: env!("CARGO_PKG_VERSION"), exact, approximate_precision: PRECISION_LABEL }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub provenance: Provenance,
}

/// A command's result in every output format, plus its exit code.
#[derive(Debug, Clone)]
pub struct Report {
    pub document: ReportDocument,
    pub text: String,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub code: i32,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.document).map_err(|e| CliError::io(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => Ok(self.text.clone()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| CliError::io(e.to_string());
                w.write_record(&self.csv_header).map_err(io)?;
                for row in &self.csv_rows {
                    w.write_record(row).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| CliError::io(e.to_string()))
            }
        }
    }
}

pub fn rational(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn real(x: &Real) -> Value {
    json!({ "value": x.to_significant(DIGITS), "precision": PRECISION_LABEL })
}

/// `value (~80-bit)`.
pub fn real_text(x: &Real) -> String {
    format!("{} ({PRECISION_LABEL})", x.to_significant(DIGITS))
}
