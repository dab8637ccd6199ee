//! `matsense` command-line front end.

mod bench;
mod failure;
mod gen;
mod setup;
mod solve;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matsense::solvers::{Algorithm, IterateStorage};

use failure::{CmdResult, Failure};

#[derive(Parser)]
#[command(name = "matsense", version, about = "Cosh-potential solvers for rank-one matrix sensing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a measurement instance and its ground truth.
    Gen(GenArgs),
    /// Solve an instance and write the solution and trace.
    Solve(SolveArgs),
    /// Check a solution against an instance.
    Verify(VerifyArgs),
    /// Time algorithms on an instance and write a CSV report.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Orthogonal,
    Rho,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_enum, default_value = "orthogonal")]
    pub regime: RegimeArg,
    /// Pairwise inner-product bound for `--regime rho`.
    #[arg(long)]
    pub rho: Option<f64>,
    /// `lo:hi` for uniform eigenvalues, or a comma-separated explicit list.
    #[arg(long, default_value = "0.5:2.0")]
    pub spectrum: String,
    /// `haar`, or `householder:K` for a product of K random reflections.
    #[arg(long, default_value = "haar")]
    pub basis: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

/// Solver settings shared by `solve` and `bench`.
#[derive(Args, Clone)]
pub struct SolverFlags {
    /// JSON file with `SolverConfig` fields; its values override flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    /// Batch size for the stochastic algorithms (default `max(1, m/4)`).
    #[arg(long)]
    pub batch: Option<usize>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub log_every: Option<usize>,
    #[arg(long)]
    pub recompute_every: Option<usize>,
    #[arg(long, value_enum)]
    pub storage: Option<StorageArg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StorageArg {
    Dense,
    Deferred,
}

impl From<StorageArg> for IterateStorage {
    fn from(s: StorageArg) -> Self {
        match s {
            StorageArg::Dense => IterateStorage::Dense,
            StorageArg::Deferred => IterateStorage::Deferred,
        }
    }
}

#[derive(Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_parser = parse_algorithm)]
    pub algorithm: Algorithm,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverFlags,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub solution: PathBuf,
    #[arg(long)]
    pub delta: f64,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Comma-separated algorithm names.
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
    pub algorithms: Vec<Algorithm>,
    /// Number of seeds per stochastic algorithm.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    /// Run exactly this many steps instead of stopping on the potential.
    #[arg(long)]
    pub iters: Option<usize>,
    /// CSV report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverFlags,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: matsense::Error| e.to_string())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("MATSENSE_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::usage(format!("MATSENSE_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::usage(format!("cannot configure thread pool: {e}")))
}

fn dispatch(cli: Cli) -> CmdResult {
    configure_threads()?;
    match cli.command {
        Command::Gen(a) => gen::run(&a),
        Command::Solve(a) => solve::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Bench(a) => bench::run(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
