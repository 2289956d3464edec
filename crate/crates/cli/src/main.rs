//! `periodica`: Jones polynomials, Khovanov ranks and periodicity checks
//! from the command line.

mod commands;
mod input;
mod selftest;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use periodica::{Budget, BudgetError, DiagramError, Error, LaurentError};

#[derive(Debug, Parser)]
#[command(name = "periodica", version, about = "Jones-type invariants and periodicity criteria for links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for state sums and Khovanov blocks.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest number of Kauffman states one state sum may enumerate.
    #[arg(long, global = true)]
    max_states: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Unreduced Jones polynomial of a PD or PTC file.
    Jones { input: PathBuf },
    /// Khovanov ranks as `i,j,rank` CSV.
    Kh { input: PathBuf },
    /// Difference Jones polynomials of a PTC file and the decomposition check.
    Dj { input: PathBuf },
    /// Equivariant Jones polynomials `J_{p^n,p^s}` of a PTC file.
    Equivariant {
        input: PathBuf,
        #[arg(long)]
        s: Option<u32>,
    },
    /// Periodicity criteria for a diagram.
    Check {
        input: PathBuf,
        /// Prime; defaults to the period of a PTC input.
        #[arg(long)]
        p: Option<u64>,
        /// Exponent of the period `p^n`.
        #[arg(long)]
        n: Option<u32>,
        /// Level of the strengthened test (smallest admissible by default).
        #[arg(long)]
        s: Option<u32>,
        /// Rank table to use instead of computing Khovanov homology.
        #[arg(long)]
        ranks: Option<PathBuf>,
    },
    /// Murasugi congruence between a periodic diagram and its quotient.
    Murasugi { input: PathBuf },
    /// Runs the property suites over the bundled corpus.
    Selftest {
        #[arg(long, value_enum)]
        only: Option<selftest::Suite>,
        /// Corpus directory (defaults to `./data`).
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

/// What a finished command reports besides its output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    PropertyFailed,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::Budget(_) => 3,
                Error::Inconsistent(_) => 4,
                Error::Diagram(_) | Error::Laurent(_) | Error::Malformed(_) => 2,
            };
        }
        if cause.downcast_ref::<BudgetError>().is_some() {
            return 3;
        }
        if cause.downcast_ref::<DiagramError>().is_some()
            || cause.downcast_ref::<LaurentError>().is_some()
            || cause.downcast_ref::<io::Error>().is_some()
        {
            return 2;
        }
    }
    2
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("cannot start the worker pool")?;
    }
    let mut budget = Budget::from_env().map_err(Error::from)?;
    if let Some(states) = cli.max_states {
        budget.max_states = states;
    }
    let fmt = cli.format;
    match cli.command {
        Command::Jones { input } => commands::jones(&input, fmt, &budget),
        Command::Kh { input } => commands::kh(&input, fmt, &budget),
        Command::Dj { input } => commands::dj(&input, fmt, &budget),
        Command::Equivariant { input, s } => commands::equivariant(&input, s, fmt, &budget),
        Command::Check { input, p, n, s, ranks } => {
            commands::check(&input, commands::CheckArgs { p, n, s, ranks }, fmt, &budget)
        }
        Command::Murasugi { input } => commands::murasugi(&input, fmt, &budget),
        Command::Selftest { only, data } => selftest::run(only, data, fmt, &budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::PropertyFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
