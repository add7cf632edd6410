mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

/// Tire pitch sequence noise: spectra, exact and approximated optima, GA,
/// model export.
#[derive(Debug, Parser)]
#[command(name = "pitchopt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectrum and noise of one sequence.
    Noise(NoiseArgs),
    /// Minimum exact noise over all valid sequences.
    SolveExact(SolveArgs),
    /// Minimum approximated noise, reported with the exact noise of its sequence.
    SolveApprox(SolveArgs),
    /// Genetic algorithm on the exact noise.
    Ga(GaArgs),
    /// Write the MILP for one tire length as a CPLEX LP file.
    ExportLp(ExportArgs),
    /// Dump the start-position graph for one tire length.
    Graph(GraphArgs),
    /// Exact and approximated optima for a list of instances, as CSV.
    Table(TableArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InstanceArgs {
    /// Instance file.
    #[arg(long, value_name = "FILE", conflicts_with = "triple")]
    pub instance: Option<PathBuf>,
    /// Reference catalog (ratios 1, 5/4, 3/2) with N pitches and the same
    /// occurrence window for every type.
    #[arg(long, value_name = "N,MIN,MAX")]
    pub triple: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Directory for result files and the run manifest.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Print times as min:sec.
    #[arg(long)]
    pub min_sec: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NoiseArgs {
    /// Pitch types as digits, for example 1311323331.
    #[arg(long)]
    pub sequence: String,
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Harmonics to evaluate; defaults to the instance's K.
    #[arg(long)]
    pub harmonics: Option<usize>,
    /// Print the summary as JSON.
    #[arg(long)]
    pub json: bool,
    /// Also write a gnuplot script for the spectrum.
    #[arg(long)]
    pub plot: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SolveArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value = "none", value_parser = ["none", "fix-first", "rotation-cuts"])]
    pub symmetry: String,
    /// Stop after this many seconds and report the incumbent.
    #[arg(long, value_name = "SECS")]
    pub time_limit: Option<f64>,
    /// Known upper bound on the optimum.
    #[arg(long)]
    pub upper_bound: Option<f64>,
    /// Print the result as JSON.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GaArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Overrides the seed of the instance file.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_name = "SECS")]
    pub time_limit: Option<f64>,
    #[arg(long)]
    pub json: bool,
    /// Also write a gnuplot script for the generation trace.
    #[arg(long)]
    pub plot: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExportArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Trailing empty units; the tire length is N l_max - j.
    #[arg(long)]
    pub j: u64,
    /// Leave out occurrence, run and adjacency rows.
    #[arg(long)]
    pub basic: bool,
    #[arg(long, default_value = "none", value_parser = ["none", "fix-first"])]
    pub symmetry: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Trailing empty units; the tire length is N l_max - j.
    #[arg(long, conflicts_with = "period")]
    pub j: Option<u64>,
    /// Tire length in units, instead of --j.
    #[arg(long)]
    pub period: Option<u64>,
    /// Write per-harmonic arc weights.
    #[arg(long)]
    pub weights: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TableArgs {
    /// Instance files; repeatable.
    #[arg(long = "instance", value_name = "FILE")]
    pub instances: Vec<PathBuf>,
    /// Reference-catalog triples; repeatable.
    #[arg(long = "triple", value_name = "N,MIN,MAX")]
    pub triples: Vec<String>,
    /// Per-solve time limit in seconds.
    #[arg(long, value_name = "SECS")]
    pub time_limit: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
