//! `aaca`: ant-colony guided grayscale upscaling from the command line.

mod commands;
mod config;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use aaca_core::{DownscaleMode, Method};

use config::Overrides;

#[derive(Debug)]
pub enum AppError {
    Core(aaca_core::Error),
    Config(String),
    Usage(String),
}

impl From<aaca_core::Error> for AppError {
    fn from(e: aaca_core::Error) -> Self {
        AppError::Core(e)
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Core(e) => e.fmt(f),
            AppError::Config(msg) => write!(f, "config: {}", msg),
            AppError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl AppError {
    /// 1 for argument misuse, 2 for I/O failures, 3 for anything the
    /// validation layers reject.
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 1,
            AppError::Core(aaca_core::Error::Io(_)) => 2,
            AppError::Core(_) | AppError::Config(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "aaca", version, about = "Ant-colony guided grayscale image upscaling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Upscale one PGM image
    Interpolate(InterpolateArgs),
    /// Downscale references, rebuild them with each method, score and report
    Bench(BenchArgs),
    /// Build a pheromone field and dump it as CSV
    Pheromone(PheromoneArgs),
    /// Score a reconstruction against a reference image
    Metrics(MetricsArgs),
}

#[derive(Args)]
struct InterpolateArgs {
    /// Source PGM image
    #[arg(long)]
    input: Option<PathBuf>,
    /// Destination PGM path
    #[arg(long)]
    output: Option<PathBuf>,
    /// One of: nearest, bilinear, bicubic, obaca, aaca
    #[arg(long)]
    method: Option<Method>,
    /// Integer upscale factor, at least 2
    #[arg(long)]
    scale: Option<u32>,
    /// Colony RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// JSON config file; the AACA_CONFIG variable names a fallback
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Reference PGM image, repeatable
    #[arg(long = "input")]
    inputs: Vec<PathBuf>,
    /// Method to run, repeatable; defaults to all five
    #[arg(long = "method")]
    methods: Vec<Method>,
    /// Integer upscale factor, at least 2
    #[arg(long)]
    scale: Option<u32>,
    /// Colony RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// JSON config file; the AACA_CONFIG variable names a fallback
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report base path; writes <base>.csv, <base>.json, <base>.config.json
    #[arg(long)]
    report: Option<PathBuf>,
    /// How references are reduced before upscaling: decimate or box
    #[arg(long)]
    downscale: Option<DownscaleMode>,
    /// Externally produced reconstruction to score against the reference
    #[arg(long)]
    compare: Option<PathBuf>,
}

#[derive(Args)]
struct PheromoneArgs {
    /// Source PGM image
    #[arg(long)]
    input: Option<PathBuf>,
    /// Destination CSV path
    #[arg(long)]
    output: Option<PathBuf>,
    /// Colony RNG seed
    #[arg(long)]
    seed: Option<u64>,
    /// JSON config file; the AACA_CONFIG variable names a fallback
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct MetricsArgs {
    /// Reference PGM image
    #[arg(long)]
    input: Option<PathBuf>,
    /// Image to score against the reference
    #[arg(long)]
    compare: Option<PathBuf>,
    /// Report base path; writes <base>.csv, <base>.json, <base>.config.json
    #[arg(long)]
    report: Option<PathBuf>,
    /// JSON config file; the AACA_CONFIG variable names a fallback
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let ok = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Interpolate(a) => {
            let file = config::load_file(a.config.as_deref())?;
            let flags = Overrides {
                seed: a.seed,
                methods: a.method.map(|m| vec![m]),
                scale: a.scale,
                inputs: a.input.into_iter().collect(),
                output: a.output,
                ..Overrides::default()
            };
            let settings = config::resolve(&file, &flags, &[Method::Aaca])?;
            commands::interpolate_cmd(&settings)
        }
        Command::Bench(a) => {
            let file = config::load_file(a.config.as_deref())?;
            let flags = Overrides {
                seed: a.seed,
                methods: (!a.methods.is_empty()).then_some(a.methods),
                scale: a.scale,
                downscale: a.downscale,
                inputs: a.inputs,
                report: a.report,
                compare: a.compare,
                ..Overrides::default()
            };
            let settings = config::resolve(&file, &flags, &Method::ALL)?;
            commands::bench_cmd(&settings)
        }
        Command::Pheromone(a) => {
            let file = config::load_file(a.config.as_deref())?;
            let flags = Overrides {
                seed: a.seed,
                inputs: a.input.into_iter().collect(),
                output: a.output,
                ..Overrides::default()
            };
            let settings = config::resolve(&file, &flags, &[Method::Aaca])?;
            commands::pheromone_cmd(&settings)
        }
        Command::Metrics(a) => {
            let file = config::load_file(a.config.as_deref())?;
            let flags = Overrides {
                inputs: a.input.into_iter().collect(),
                compare: a.compare,
                report: a.report,
                ..Overrides::default()
            };
            let settings = config::resolve(&file, &flags, &[Method::Aaca])?;
            commands::metrics_cmd(&settings)
        }
    }
}
