//! `cascade-clock`: file-based pipeline for generating graphs, simulating and
//! distorting cascades, estimating clocks and running sweeps.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cascade-clock", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an Erdős–Rényi or stochastic block model graph file.
    GenGraph(GenGraphArgs),
    /// Simulate a cascade on a graph and write the infection sequence.
    Simulate(SimulateArgs),
    /// Stretch a sequence's timeline; writes the observed sequence and its clock.
    Distort(DistortArgs),
    /// Estimate the clock of an observed sequence.
    Estimate(EstimateArgs),
    /// Print the distance between two clocks on an observed sequence.
    Evaluate(EvaluateArgs),
    /// Run a parameter sweep and write aggregated results as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphModel {
    Er,
    Sbm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CascadeModel {
    Ic,
    Lt,
}

#[derive(Debug, Args)]
struct GenGraphArgs {
    #[arg(long, value_enum, default_value = "er")]
    model: GraphModel,
    /// Vertex count (SBM: split into round(√n) and the rest unless --sizes is given).
    #[arg(long)]
    n: Option<usize>,
    /// ER edge probability; defaults to n^(-1/alpha).
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 3.0)]
    alpha: f64,
    /// Comma-separated SBM block sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0.2)]
    p_intra: f64,
    #[arg(long, default_value_t = 0.01)]
    p_inter: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "ic")]
    model: CascadeModel,
    #[arg(long, default_value_t = 0.1)]
    pn: f64,
    #[arg(long, default_value_t = 0.0)]
    pe: f64,
    /// Number of initially infected vertices, drawn uniformly from the seed.
    #[arg(long, default_value_t = 1, conflicts_with = "s0")]
    s0_size: usize,
    /// Explicit comma-separated initial set.
    #[arg(long, value_delimiter = ',')]
    s0: Option<Vec<usize>>,
    #[arg(long, default_value_t = 100)]
    max_steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct DistortArgs {
    /// Infection sequence JSON.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    stretch: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Observed sequence JSON.
    #[arg(long)]
    out: PathBuf,
    /// Ground-truth clock JSON.
    #[arg(long)]
    clock_out: PathBuf,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    observed: PathBuf,
    #[arg(long)]
    pn: f64,
    #[arg(long)]
    pe: f64,
    /// Size of the initially infected set (required: it is not inferred).
    #[arg(long)]
    s0_size: usize,
    #[arg(long, default_value = "fastclock")]
    estimator: String,
    /// Estimated clock JSON.
    #[arg(long)]
    out: PathBuf,
    /// Metadata record JSON; printed to stdout when omitted.
    #[arg(long)]
    meta: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    /// Observed sequence JSON (only step sizes are used).
    #[arg(long)]
    observed: PathBuf,
    #[arg(long)]
    truth: PathBuf,
    #[arg(long)]
    estimate: PathBuf,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// JSON trial configuration; may also carry `axis`, `values` and `trials`.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    axis: Option<String>,
    /// Comma-separated axis values.
    #[arg(long, value_delimiter = ',')]
    values: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    pn: Option<f64>,
    #[arg(long)]
    pe: Option<f64>,
    #[arg(long)]
    stretch: Option<usize>,
    /// Comma-separated estimators to run.
    #[arg(long, value_delimiter = ',')]
    estimator: Option<Vec<String>>,
    #[arg(long)]
    dp_cap: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(commands::Failure::Data(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
