use std::fmt;
use std::path::PathBuf;

use latcover::clustering::{phase_times, DEFAULT_ETA0, DEFAULT_GAMMA};
use latcover::domain::Shape;
use latcover::walk::DEFAULT_EDGE_RATE;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    GreenTable,
    IsoCheck,
    CoverScaling,
    ClusterCensus,
    ExcursionMoments,
}

impl Command {
    pub const ALL: [Command; 5] = [
        Command::GreenTable,
        Command::IsoCheck,
        Command::CoverScaling,
        Command::ClusterCensus,
        Command::ExcursionMoments,
    ];

    pub const NAMES: [&'static str; 5] = [
        "green-table",
        "iso-check",
        "cover-scaling",
        "cluster-census",
        "excursion-moments",
    ];

    pub fn parse(name: &str) -> Result<Self> {
        Command::NAMES
            .iter()
            .position(|&n| n == name)
            .map(|i| Command::ALL[i])
            .ok_or_else(|| CliError::UnknownCommand(name.to_string()))
    }

    pub fn name(self) -> &'static str {
        Command::NAMES[Command::ALL.iter().position(|&c| c == self).unwrap()]
    }

    /// Base name of the main CSV file.
    pub fn file_stem(self) -> String {
        self.name().replace('-', "_")
    }

    fn default_trials(self) -> usize {
        match self {
            Command::GreenTable => 1,
            Command::IsoCheck => 10_000,
            Command::CoverScaling => 200,
            Command::ClusterCensus => 100,
            Command::ExcursionMoments => 100_000,
        }
    }

    fn default_levels(self) -> Vec<Level> {
        match self {
            Command::GreenTable => vec![Level::linear(3.0), Level::linear(10.0)],
            Command::IsoCheck | Command::ExcursionMoments => vec![Level::linear(3.0)],
            Command::CoverScaling => [3.0, 3.5, 4.0, 4.5].map(Level::log).to_vec(),
            Command::ClusterCensus => vec![Level::log(4.0)],
        }
    }

    fn default_times(self) -> Vec<f64> {
        match self {
            Command::IsoCheck => vec![1.0, 4.0],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One domain scale, kept in both parameterisations so that a domain given
/// by `N` is rebuilt from exactly that `N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub n: f64,
    #[serde(rename = "N")]
    pub big_n: f64,
}

impl Level {
    pub fn log(n: f64) -> Self {
        Level { n, big_n: n.exp() }
    }

    pub fn linear(big_n: f64) -> Self {
        Level {
            n: big_n.ln(),
            big_n,
        }
    }
}

/// An experiment as given on the command line; unset fields take
/// command-specific defaults in [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub shape: Option<String>,
    pub n: Option<Vec<f64>>,
    pub big_n: Option<Vec<f64>>,
    /// Scales already resolved in both parameterisations, as stored in a
    /// manifest.
    pub levels: Option<Vec<Level>>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub u: Option<f64>,
    pub t: Option<Vec<f64>>,
    pub s: Option<f64>,
    pub eta0: Option<f64>,
    pub gamma: Option<f64>,
    pub edge_rate: Option<f64>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        ExperimentConfig {
            command,
            shape: None,
            n: None,
            big_n: None,
            levels: None,
            trials: None,
            seed: None,
            u: None,
            t: None,
            s: None,
            eta0: None,
            gamma: None,
            edge_rate: None,
            out: None,
        }
    }
}

/// A fully specified experiment. Echoed into the manifest and sufficient to
/// reproduce every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub shape: String,
    pub levels: Vec<Level>,
    pub trials: usize,
    pub seed: u64,
    pub u: f64,
    /// Explicit `∂`-times; empty means the command's default rule.
    pub t: Vec<f64>,
    /// Phase offset; `cluster-census` runs at `t_A + t_B + s n` when set.
    pub s: Option<f64>,
    pub eta0: f64,
    pub gamma: f64,
    pub edge_rate: f64,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn shape(&self) -> Result<Shape> {
        Shape::parse(&self.shape).map_err(|e| CliError::Shape(e.to_string()))
    }

    pub fn to_experiment(&self) -> ExperimentConfig {
        ExperimentConfig {
            command: self.command,
            shape: Some(self.shape.clone()),
            n: None,
            big_n: None,
            levels: Some(self.levels.clone()),
            trials: Some(self.trials),
            seed: Some(self.seed),
            u: Some(self.u),
            t: Some(self.t.clone()),
            s: self.s,
            eta0: Some(self.eta0),
            gamma: Some(self.gamma),
            edge_rate: Some(self.edge_rate),
            out: Some(self.out.clone()),
        }
    }
}

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_OUT: &str = "latcover-out";

/// Fills defaults and checks ranges, reporting every problem at once.
pub fn validate(config: &ExperimentConfig) -> Result<RunConfig> {
    let command = config.command;
    let shape = config.shape.clone().unwrap_or_else(|| "disc".into());
    Shape::parse(&shape).map_err(|e| CliError::Shape(e.to_string()))?;

    let mut errors = Vec::new();
    let given = [
        config.n.is_some(),
        config.big_n.is_some(),
        config.levels.is_some(),
    ];
    let levels = if given.iter().filter(|&&g| g).count() > 1 {
        errors.push("give either --n or --N, not both".to_string());
        Vec::new()
    } else if let Some(ns) = &config.n {
        ns.iter().map(|&n| Level::log(n)).collect()
    } else if let Some(scales) = &config.big_n {
        scales.iter().map(|&big_n| Level::linear(big_n)).collect()
    } else if let Some(levels) = &config.levels {
        levels.clone()
    } else {
        command.default_levels()
    };
    for level in &levels {
        if !(level.big_n.is_finite() && level.big_n > 1.0 && level.n.is_finite()) {
            errors.push(format!(
                "N must exceed 1 (got N = {}, n = {})",
                level.big_n, level.n
            ));
        }
    }
    if levels.is_empty() && errors.is_empty() {
        errors.push("no domain scales given".into());
    }

    let trials = config.trials.unwrap_or(command.default_trials());
    let min_trials = match command {
        Command::IsoCheck | Command::ExcursionMoments => 2,
        _ => 1,
    };
    if trials < min_trials {
        errors.push(format!(
            "{command} needs at least {min_trials} trials (got {trials})"
        ));
    }
    if trials > u32::MAX as usize {
        errors.push(format!("at most {} trials are supported", u32::MAX));
    }

    let eta0 = config.eta0.unwrap_or(DEFAULT_ETA0);
    let gamma = config.gamma.unwrap_or(DEFAULT_GAMMA);
    let eta_ok = eta0 > 0.0 && eta0 < 0.5;
    if !eta_ok {
        errors.push(format!("eta0 must lie in (0, 1/2) (got {eta0})"));
    }
    if !(gamma > 0.0 && (!eta_ok || gamma < 0.5 - eta0)) {
        errors.push(format!(
            "gamma must lie in (0, 1/2 - eta0) (got gamma = {gamma}, eta0 = {eta0})"
        ));
    }

    let edge_rate = config.edge_rate.unwrap_or(DEFAULT_EDGE_RATE);
    if !(edge_rate.is_finite() && edge_rate > 0.0) {
        errors.push(format!(
            "edge rate must be positive and finite (got {edge_rate})"
        ));
    }
    let u = config.u.unwrap_or(0.0);
    if !(u.is_finite() && u >= 0.0) {
        errors.push(format!("u must be nonnegative and finite (got {u})"));
    }
    let t = config.t.clone().unwrap_or_else(|| command.default_times());
    for &ti in &t {
        if !(ti.is_finite() && ti >= 0.0) {
            errors.push(format!("t must be nonnegative and finite (got {ti})"));
        }
    }
    if command == Command::IsoCheck && t.is_empty() {
        errors.push("iso-check needs at least one time t".into());
    }
    if let Some(s) = config.s {
        if !s.is_finite() {
            errors.push(format!("s must be finite (got {s})"));
        }
    }

    if command == Command::ClusterCensus && errors.is_empty() {
        for level in &levels {
            let scale = phase_times(level.n, eta0, gamma).and_then(|p| p.cluster_scale());
            if let Err(e) = scale {
                errors.push(format!("n = {}: {e}", level.n));
            }
        }
    }

    if !errors.is_empty() {
        return Err(CliError::Invalid(errors));
    }
    Ok(RunConfig {
        command,
        shape,
        levels,
        trials,
        seed: config.seed.unwrap_or(DEFAULT_SEED),
        u,
        t,
        s: config.s,
        eta0,
        gamma,
        edge_rate,
        out: config
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
    })
}
