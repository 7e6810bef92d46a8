mod inspect;
mod table;
mod verify;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qeulerian::identities::{TruncationPolicy, DEFAULT_SAMPLES, DEFAULT_SEED};

/// Exact verification of Stirling-Eulerian generating function identities.
#[derive(Debug, Parser)]
#[command(name = "qeulerian", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check identities for every n up to --n-max.
    Verify(verify::VerifyArgs),
    /// Print a polynomial family for n = 1..=n-max.
    Table(table::TableArgs),
    /// Show statistics and decompositions of one permutation.
    Inspect(inspect::InspectArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Truncation and sampling options.
#[derive(Debug, Clone, clap::Args)]
pub struct PolicyArgs {
    #[arg(long = "n-max", alias = "n", default_value_t = 6)]
    n_max: usize,
    #[arg(long)]
    t_order: Option<usize>,
    #[arg(long)]
    q_window: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Use a full grid of small integer points instead of random schemes.
    #[arg(long)]
    exhaustive_grid: bool,
}

impl PolicyArgs {
    fn policy(&self) -> TruncationPolicy {
        let base = TruncationPolicy::for_n_max(self.n_max);
        TruncationPolicy {
            t_order: self.t_order.unwrap_or(base.t_order),
            q_window: self.q_window.unwrap_or(base.q_window),
            samples: self.samples,
            seed: self.seed,
            exhaustive_grid: self.exhaustive_grid,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Config(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Config(_) | CliError::Io(_) => 3,
        }
    }
}

/// Writes `body` to `--out` or standard output.
pub fn emit(common: &Common, body: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => fs::write(path, body)?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("QEULERIAN_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Config(format!("QEULERIAN_THREADS must be a positive integer, got `{}`", value)))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Verify(args) => verify::run(&args),
        Command::Table(args) => table::run(&args).map(|()| true),
        Command::Inspect(args) => inspect::run(&args).map(|()| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {}", m),
                CliError::Config(m) => eprintln!("configuration error: {}", m),
                CliError::Io(err) => eprintln!("i/o error: {}", err),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
