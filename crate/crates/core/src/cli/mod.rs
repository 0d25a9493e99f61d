//! Command-line surface.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lssg::{GenKind, LssgError, Seed};

pub use commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "lssg", version, about = "Local sparse spanning graph oracle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a generated graph in the edge-list format.
    Gen(GenArgs),
    /// Decide a single edge.
    Answer(AnswerArgs),
    /// Decide every edge; writes the kept edges as a graph file.
    Sweep(SweepArgs),
    /// Sweep, compare against the global reference and run all checks.
    Verify(VerifyArgs),
    /// Median per-call queries across sizes with a log-log slope fit.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn parse_kind(s: &str) -> Result<GenKind, String> {
    s.parse().map_err(|e: LssgError| e.to_string())
}

fn parse_seed(s: &str) -> Result<Seed, String> {
    s.parse().map_err(|e: LssgError| e.to_string())
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long = "gen", value_parser = parse_kind)]
    pub kind: GenKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub delta_max: Option<usize>,
    /// Seed as up to 64 hex digits.
    #[arg(long, env = "LSSG_SEED", default_value = "0", value_parser = parse_seed)]
    pub seed: Seed,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Graph file in the edge-list format.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    pub graph: Option<PathBuf>,
    /// Generate the graph instead of loading one (needs --n).
    #[arg(long, value_parser = parse_kind, requires = "n")]
    pub gen: Option<GenKind>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree bound for generated graphs.
    #[arg(long)]
    pub delta_max: Option<usize>,
    /// Seed for generated graphs; defaults to --seed.
    #[arg(long, value_parser = parse_seed)]
    pub gen_seed: Option<Seed>,
    /// Shared random seed as up to 64 hex digits.
    #[arg(long, env = "LSSG_SEED", default_value = "0", value_parser = parse_seed)]
    pub seed: Seed,
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c_k: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c_s: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c_delta: f64,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    /// JSON fixture pinning centers, marks, ranks, radii or ell.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnswerArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long)]
    pub u: usize,
    #[arg(long)]
    pub v: usize,
    /// Print a readable trace instead of JSON.
    #[arg(long)]
    pub explain: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Worker threads; 0 uses all cores, absent runs serially.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Destination of the kept-edge graph file.
    #[arg(long)]
    pub out: PathBuf,
    /// Destination of the query statistics JSON; stdout if absent.
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `csv` emits the stretch histogram instead of the full report.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long = "gen", value_parser = parse_kind)]
    pub kind: GenKind,
    /// Comma-separated graph sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    /// Number of seeds per size.
    #[arg(long, default_value_t = 3)]
    pub seeds: usize,
    /// Sampled edges per (size, seed).
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long)]
    pub delta_max: Option<usize>,
    #[arg(long, env = "LSSG_SEED", default_value = "0", value_parser = parse_seed)]
    pub seed: Seed,
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

pub fn run(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Answer(a) => commands::answer(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Verify(a) => commands::verify(a),
        Command::Bench(a) => commands::bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(names)) => {
            eprintln!("lssg: failed checks: {}", names.join(", "));
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("lssg: {e}");
            match e {
                LssgError::InvariantViolation(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
