//! Report model and its JSON / CSV writers.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use pointsplit_core::verify::CheckResult;
use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};
use crate::error::CliError;

/// A flat table with fixed column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }
}

/// Everything one subcommand produces.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    pub warnings: Vec<String>,
    pub tables: BTreeMap<&'static str, Table>,
}

impl Report {
    pub fn new(command: &'static str, config: RunConfig) -> Self {
        Self { command, config, checks: Vec::new(), warnings: Vec::new(), tables: BTreeMap::new() }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn warn(&mut self, msg: String) {
        eprintln!("warning: {msg}");
        self.warnings.push(msg);
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Every table as CSV, including `config` and `checks`, keyed by name.
    pub fn csv_tables(&self) -> Result<Vec<(String, String)>, CliError> {
        let mut out = Vec::new();

        let mut config = Table::new(&["key", "value"]);
        config.push(vec!["command".into(), self.command.into()]);
        if let Value::Object(map) = serde_json::to_value(&self.config)? {
            for (k, v) in map {
                let v = match v {
                    Value::Array(_) | Value::Object(_) => Value::String(v.to_string()),
                    other => other,
                };
                config.push(vec![k.into(), v]);
            }
        }
        out.push(("config".to_string(), render_csv(&config)?));

        let mut checks = Table::new(&["name", "passed", "max_residual", "tolerance"]);
        for c in &self.checks {
            checks.push(vec![c.name.clone().into(), c.passed.into(), c.max_residual.into(), c.tolerance.into()]);
        }
        out.push(("checks".to_string(), render_csv(&checks)?));

        for (name, table) in &self.tables {
            out.push((name.to_string(), render_csv(table)?));
        }
        Ok(out)
    }

    /// Writes the report where the configuration says; returns the paths written.
    pub fn emit(&self) -> Result<Vec<PathBuf>, CliError> {
        match (self.config.format, &self.config.out) {
            (Format::Json, Some(path)) => {
                std::fs::write(path, self.to_json()?)?;
                Ok(vec![path.clone()])
            }
            (Format::Json, None) => {
                std::io::stdout().lock().write_all(self.to_json()?.as_bytes())?;
                Ok(Vec::new())
            }
            (Format::Csv, Some(path)) => {
                let mut written = Vec::new();
                for (name, body) in self.csv_tables()? {
                    let p = csv_path(path, &name);
                    std::fs::write(&p, body)?;
                    written.push(p);
                }
                Ok(written)
            }
            (Format::Csv, None) => {
                let mut stdout = std::io::stdout().lock();
                for (k, (name, body)) in self.csv_tables()?.into_iter().enumerate() {
                    if k > 0 {
                        writeln!(stdout)?;
                    }
                    writeln!(stdout, "# {name}")?;
                    stdout.write_all(body.as_bytes())?;
                }
                Ok(Vec::new())
            }
        }
    }
}

/// `dir/run.csv` + `kernel` → `dir/run_kernel.csv`.
pub fn csv_path(out: &Path, table: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "report".into());
    out.with_file_name(format!("{stem}_{table}.csv"))
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_csv(table: &Table) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(cell))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_paths() {
        assert_eq!(csv_path(Path::new("/tmp/run.csv"), "kernel"), PathBuf::from("/tmp/run_kernel.csv"));
        assert_eq!(csv_path(Path::new("out"), "checks"), PathBuf::from("out_checks.csv"));
    }

    #[test]
    fn csv_quotes_and_blanks() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["x, y".into(), Value::Null]);
        t.push(vec![1.5.into(), true.into()]);
        assert_eq!(render_csv(&t).unwrap(), "a,b\n\"x, y\",\n1.5,true\n");
    }
}
