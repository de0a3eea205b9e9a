//! `spherepack <module> <verb> [flags]`.
//!
//! Exit codes: 0 on success, 1 when a computation fails, 2 on usage errors.

mod args;
mod cmd;
mod output;
mod svg;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::output::{emit, CliError};

#[derive(Debug, Parser)]
#[command(name = "spherepack", version, about = "Lattices, codes, theta series and LP bounds for sphere packing")]
pub struct Cli {
    #[command(subcommand)]
    pub module: Module,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the rendered output here; a JSON summary listing the file goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Svg => "svg",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Module {
    /// Named and custom lattices.
    #[command(subcommand)]
    Lattice(cmd::lattice::Verb),
    /// Binary codes and Construction A.
    #[command(subcommand)]
    Codes(cmd::codes::Verb),
    /// Transforms on Z/m, cap series and Poisson summation.
    #[command(subcommand)]
    Fourier(cmd::fourier::Verb),
    /// Eisenstein series, theta series and Bernoulli numbers.
    #[command(subcommand)]
    Modular(cmd::modular::Verb),
    /// Ball volumes, caps and random saturated packings.
    #[command(subcommand)]
    Geometry(cmd::geometry::Verb),
    /// The E8 root system, its Coxeter element and cyclotomic realizations.
    #[command(subcommand)]
    Coxeter(cmd::coxeter::Verb),
    /// Linear-programming density bounds.
    #[command(subcommand)]
    Bound(cmd::bound::Verb),
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (command, report) = match &cli.module {
        Module::Lattice(v) => (format!("lattice {}", v.name()), cmd::lattice::run(v)?),
        Module::Codes(v) => (format!("codes {}", v.name()), cmd::codes::run(v)?),
        Module::Fourier(v) => (format!("fourier {}", v.name()), cmd::fourier::run(v)?),
        Module::Modular(v) => (format!("modular {}", v.name()), cmd::modular::run(v)?),
        Module::Geometry(v) => (format!("geometry {}", v.name()), cmd::geometry::run(v, cli.seed)?),
        Module::Coxeter(v) => (format!("coxeter {}", v.name()), cmd::coxeter::run(v)?),
        Module::Bound(v) => (format!("bound {}", v.name()), cmd::bound::run(v)?),
    };
    emit(cli, &command, report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spherepack: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
