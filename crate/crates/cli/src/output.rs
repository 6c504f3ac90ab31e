use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{CliError, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn flag(b: bool) -> String {
    u8::from(b).to_string()
}

/// A CSV file: fixed header and rows in output order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: impl Into<String>, header: Vec<&'static str>) -> Self {
        Table {
            name: name.into(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name)
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join(self.file_name());
        let context = || format!("writing {}", path.display());
        let mut w = csv::Writer::from_path(&path).map_err(|e| CliError::io(context(), e))?;
        w.write_record(&self.header)
            .map_err(|e| CliError::io(context(), e))?;
        for row in &self.rows {
            w.write_record(row)
                .map_err(|e| CliError::io(context(), e))?;
        }
        w.flush().map_err(|e| CliError::io(context(), e))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Versions {
    pub latcover: String,
    pub latcover_cli: String,
}

impl Versions {
    pub fn current() -> Self {
        Versions {
            latcover: latcover::VERSION.to_string(),
            latcover_cli: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Runtime {
    /// Worker threads requested through `LATCOVER_THREADS`, if any.
    pub threads: Option<usize>,
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config: RunConfig,
    pub versions: Versions,
    pub runtime: Runtime,
    pub wall_time_seconds: f64,
    pub outputs: Vec<String>,
    pub notes: Vec<String>,
}

impl Manifest {
    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join(MANIFEST_FILE);
        let text = serde_json::to_string_pretty(self).expect("manifest serialises");
        fs::write(&path, text + "\n")
            .map_err(|e| CliError::io(format!("writing {}", path.display()), e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let manifest_error = |reason: String| CliError::Manifest {
            path: path.to_path_buf(),
            reason,
        };
        let text = fs::read_to_string(path).map_err(|e| manifest_error(e.to_string()))?;
        serde_json::from_str(&text).map_err(|e| manifest_error(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [
            0.1,
            1.0 / 3.0,
            std::f64::consts::PI,
            1e-300,
            123_456_789.123_456_79,
            -2.5e17,
        ] {
            assert_eq!(float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(float(1.5), "1.5000000000000000e0");
    }
}
