//! Thin command-line front end: parse flags, layer them over an optional
//! config file, run, and map failures to exit codes (2 config, 3 numerical).

use clap::Parser;
use relosc::config::{parse_config, ConfigOverrides, Mode, OutputFormat, RunConfig};
use relosc::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "relosc",
    version,
    about = "Phase-space Monte Carlo for the semi-relativistic quantum harmonic oscillator",
    after_help = "x0/p0 are in dimensionless oscillator units (x sqrt(m w / hbar), p / sqrt(hbar m w)).\n\
                  Flags override values from --config. Exit codes: 0 ok, 2 config error, 3 numerical failure."
)]
struct Cli {
    /// Config file of `key = value` lines with # comments.
    #[arg(long)]
    config: Option<PathBuf>,
    /// ensemble | single | period-scan | dilation
    #[arg(long)]
    mode: Option<String>,
    /// Relativism parameter z = mc^2 / (hbar w).
    #[arg(long)]
    z: Option<f64>,
    /// Initial-state center, dimensionless coordinate.
    #[arg(long)]
    x0: Option<f64>,
    /// Initial-state center, dimensionless momentum.
    #[arg(long)]
    p0: Option<f64>,
    /// Ensemble size.
    #[arg(long = "n-traj")]
    n_traj: Option<u64>,
    /// Integrator step in units of 1/w.
    #[arg(long)]
    dt: Option<f64>,
    /// Simulation horizon in units of 1/w.
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    /// Snapshot cadence in units of 1/w.
    #[arg(long = "snapshot-every")]
    snapshot_every: Option<f64>,
    /// Histogram bin count.
    #[arg(long)]
    bins: Option<usize>,
    /// Master RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (affects wall time only, never results).
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory.
    #[arg(long = "out-dir")]
    out_dir: Option<PathBuf>,
    /// csv | ndjson
    #[arg(long)]
    format: Option<String>,
}

fn build_config(cli: Cli) -> Result<RunConfig, Error> {
    let file_layer = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Config(format!("cannot read config file {}: {e}", path.display()))
            })?;
            Some(parse_config(&text)?)
        }
        None => None,
    };
    let cli_layer = ConfigOverrides {
        mode: cli.mode.as_deref().map(Mode::parse).transpose()?,
        z: cli.z,
        x0: cli.x0,
        p0: cli.p0,
        initial: None,
        n_traj: cli.n_traj,
        seed: cli.seed,
        dt: cli.dt,
        t_end: cli.t_end,
        fp_tol: None,
        fp_max_iter: None,
        snapshot_every: cli.snapshot_every,
        bins: cli.bins,
        energies: None,
        out_dir: cli.out_dir,
        format: cli.format.as_deref().map(OutputFormat::parse).transpose()?,
        workers: cli.workers,
    };
    RunConfig::resolve(file_layer, cli_layer)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match build_config(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("relosc: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match relosc::runner::run(&config) {
        Ok(files) => {
            for f in files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("relosc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
