use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use latcover_cli::{
    parse_threads, replay_config, run, validate, CliError, Command, ExperimentConfig, THREADS_VAR,
};

/// Cover-time and local-time experiments on wired lattice domains.
///
/// Each run writes CSV tables and a manifest.json into the output directory.
/// `replay <manifest>` re-runs the configuration stored in a manifest.
#[derive(Debug, Parser)]
#[command(name = "latcover", version)]
struct Args {
    /// green-table, iso-check, cover-scaling, cluster-census, excursion-moments or replay
    command: String,
    /// Manifest to re-run (replay only)
    manifest: Option<PathBuf>,
    /// disc, square or poly:<file>
    #[arg(long)]
    shape: Option<String>,
    /// Log-scales n (comma separated)
    #[arg(long = "n", value_delimiter = ',', allow_negative_numbers = true)]
    n: Option<Vec<f64>>,
    /// Linear scales N (comma separated)
    #[arg(long = "N", value_delimiter = ',', allow_negative_numbers = true)]
    big_n: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Local time threshold of the low set
    #[arg(long, allow_negative_numbers = true)]
    u: Option<f64>,
    /// ∂-times (comma separated)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    t: Option<Vec<f64>>,
    /// Phase-B offset: run the census at t_A + t_B + s n
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eta0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Edge transition rate
    #[arg(long, allow_negative_numbers = true)]
    rate: Option<f64>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

fn experiment(args: Args) -> Result<ExperimentConfig, CliError> {
    let command = Command::parse(&args.command)?;
    if let Some(extra) = args.manifest {
        return Err(CliError::Invalid(vec![format!(
            "unexpected argument '{}' for {command}",
            extra.display()
        )]));
    }
    Ok(ExperimentConfig {
        command,
        shape: args.shape,
        n: args.n,
        big_n: args.big_n,
        levels: None,
        trials: args.trials,
        seed: args.seed,
        u: args.u,
        t: args.t,
        s: args.s,
        eta0: args.eta0,
        gamma: args.gamma,
        edge_rate: args.rate,
        out: args.out,
    })
}

fn main_inner(args: Args) -> Result<(), CliError> {
    let threads = parse_threads(std::env::var(THREADS_VAR).ok().as_deref())?;
    let config = if args.command == "replay" {
        let Some(manifest) = &args.manifest else {
            return Err(CliError::Invalid(vec![
                "replay needs a manifest path".into()
            ]));
        };
        replay_config(manifest, args.out.as_deref())?
    } else {
        validate(&experiment(args)?)?
    };
    let manifest = run(&config, threads)?;
    for note in &manifest.notes {
        println!("{note}");
    }
    for file in &manifest.outputs {
        println!("wrote {}", config.out.join(file).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match main_inner(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
