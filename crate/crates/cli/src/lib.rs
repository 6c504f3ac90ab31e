//! Experiment driver: validates a configuration, runs one command and writes
//! its CSV tables and a JSON manifest into the output directory.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::fs;
use std::path::Path;
use std::time::Instant;

use latcover::parallel::Execution;

pub use config::{validate, Command, ExperimentConfig, Level, RunConfig};
pub use error::{CliError, Result};
pub use output::{Manifest, Runtime, Table, Versions, MANIFEST_FILE};

pub const THREADS_VAR: &str = "LATCOVER_THREADS";

/// Parses a `LATCOVER_THREADS` value; `None` leaves the pool at its default.
pub fn parse_threads(value: Option<&str>) -> Result<Option<usize>> {
    match value.map(str::trim) {
        None | Some("") => Ok(None),
        Some(v) => match v.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Invalid(vec![format!(
                "{THREADS_VAR} must be a positive integer (got '{v}')"
            )])),
        },
    }
}

/// Runs `config` and writes every output file; returns the manifest.
pub fn run(config: &RunConfig, threads: Option<usize>) -> Result<Manifest> {
    if let Some(n) = threads {
        latcover::parallel::configure_threads(n);
    }
    let start = Instant::now();
    let outcome = commands::execute(config)?;
    let wall_time_seconds = start.elapsed().as_secs_f64();
    write_outputs(config, &outcome, threads, wall_time_seconds)
}

fn write_outputs(
    config: &RunConfig,
    outcome: &commands::Outcome,
    threads: Option<usize>,
    wall_time_seconds: f64,
) -> Result<Manifest> {
    let dir: &Path = &config.out;
    fs::create_dir_all(dir).map_err(|e| CliError::io(format!("creating {}", dir.display()), e))?;
    for table in &outcome.tables {
        table.write(dir)?;
    }
    let manifest = Manifest {
        config: config.clone(),
        versions: Versions::current(),
        runtime: Runtime {
            threads,
            parallel: Execution::parallel_available(),
        },
        wall_time_seconds,
        outputs: outcome.tables.iter().map(Table::file_name).collect(),
        notes: outcome.notes.clone(),
    };
    manifest.write(dir)?;
    Ok(manifest)
}

/// Re-validates the configuration stored in a manifest, optionally writing
/// to a different directory.
pub fn replay_config(manifest: &Path, out: Option<&Path>) -> Result<RunConfig> {
    let stored = Manifest::read(manifest)?.config;
    let mut experiment = stored.to_experiment();
    if let Some(out) = out {
        experiment.out = Some(out.to_path_buf());
    }
    validate(&experiment)
}
