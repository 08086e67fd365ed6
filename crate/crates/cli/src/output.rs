//! Plot data (CSV) and the verification report (JSON).

use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, Result};

/// Rows of samples under named columns.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// 17 significant digits: enough for an exact round trip of any f64.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `table` as CSV. A table whose first column is `t` must be strictly
/// increasing in it. Nothing is written on error.
pub fn emit_plot_data(table: &Table, path: &Path) -> Result<()> {
    if table.rows.is_empty() {
        return Err(CliError::PlotData(format!(
            "{}: empty trajectory",
            path.display()
        )));
    }
    if let Some(bad) = table.rows.iter().find(|r| r.len() != table.header.len()) {
        return Err(CliError::PlotData(format!(
            "{}: row has {} values for {} columns",
            path.display(),
            bad.len(),
            table.header.len()
        )));
    }
    if table.header.first().map(String::as_str) == Some("t")
        && table.rows.windows(2).any(|w| !(w[1][0] > w[0][0]))
    {
        return Err(CliError::PlotData(format!(
            "{}: time column is not strictly increasing",
            path.display()
        )));
    }
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(&table.header).map_err(csv_err)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|v| format_value(*v)))
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Reads a file written by [`emit_plot_data`].
pub fn read_plot_data(path: &Path) -> Result<Table> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    let header = r
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(String::from)
        .collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|e| CliError::PlotData(format!("{}: {s}: {e}", path.display())))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(Table { header, rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    /// Passes iff `residual <= tolerance`; NaN fails.
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let status = if residual <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            name: name.into(),
            status,
            residual,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A recorded quantity that is not asserted. `flagged` marks a value that
/// departs from the computed reference.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostic {
    pub name: String,
    pub value: f64,
    pub flagged: bool,
    pub note: String,
}

impl Diagnostic {
    pub fn new(
        name: impl Into<String>,
        value: f64,
        flagged: bool,
        note: impl Into<String>,
    ) -> Self {
        Diagnostic {
            name: name.into(),
            value,
            flagged,
            note: note.into(),
        }
    }

    /// Flagged when `value` exceeds `threshold`.
    pub fn above(
        name: impl Into<String>,
        value: f64,
        threshold: f64,
        note: impl Into<String>,
    ) -> Self {
        Self::new(name, value, !(value <= threshold), note)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub scenario: serde_json::Value,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub diagnostics: Vec<Diagnostic>,
    /// File names relative to the output directory, sorted.
    pub artifacts: Vec<String>,
    pub wall_time_s: f64,
}

impl Report {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn diagnostic(&self, name: &str) -> Option<&Diagnostic> {
        self.diagnostics.iter().find(|d| d.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_print_with_seventeen_significant_digits() {
        let s = format_value(0.1);
        let mantissa = s.split('e').next().unwrap().replace(['.', '-'], "");
        assert_eq!(mantissa.len(), 17);
        assert_eq!(s.parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn status_follows_residual_and_tolerance() {
        assert!(Check::new("a", 1e-9, 1e-8).passed());
        assert!(Check::new("b", 1e-8, 1e-8).passed());
        assert!(!Check::new("c", 2e-8, 1e-8).passed());
        assert!(!Check::new("d", f64::NAN, 1.0).passed());
    }

    #[test]
    fn nan_diagnostics_are_flagged() {
        assert!(Diagnostic::above("x", f64::NAN, 1.0, "").flagged);
        assert!(!Diagnostic::above("x", 0.5, 1.0, "").flagged);
    }
}
