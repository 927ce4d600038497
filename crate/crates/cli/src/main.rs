//! `cubic-census`: censuses of binary cubic forms and the density
//! constants predicting them.

mod commands;
mod config;
mod error;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{RunArgs, RunConfig};
use cubic_rings::densities::WORK_BITS;
use error::CliError;

#[derive(Parser)]
#[command(name = "cubic-census", version, about = "Cubic ring censuses and density predictions")]
struct Cli {
    /// Worker threads; CUBIC_CENSUS_THREADS overrides
    #[arg(short = 'j', long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count classes by discriminant and write census.csv and cumulative.csv
    Census(RunArgs),
    /// Print the counting constants and per-place factors as JSON
    Predict(RunArgs),
    /// Compare a census against the one- and two-term predictions
    Compare(RunArgs),
    /// Run the exact identity suite
    Identities {
        /// Working precision in bits
        #[arg(long, default_value_t = WORK_BITS)]
        bits: u32,
    },
    /// Count W-orbits and reducible classes against the constant C
    ReducibleCensus(RunArgs),
    /// Check the enumerator against a brute-force box search
    Oracle {
        #[command(flatten)]
        run: RunArgs,
        /// Coefficient box half-width
        #[arg(long = "box", default_value_t = 20)]
        box_bound: i64,
    },
    /// Tabulate alpha, beta and gamma for each symbol at the given primes
    LocalDensities {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
    },
    /// Solve the masses back from the density identities
    SerreCheck,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let j = cli.threads;
    let resolve = |args: &RunArgs, default| RunConfig::resolve(args, j, default);
    match cli.command {
        Command::Census(a) => commands::census(&resolve(&a, None)?),
        Command::Predict(a) => commands::predict(&resolve(&a, Some(1))?),
        Command::Compare(a) => commands::compare(&resolve(&a, None)?),
        Command::Identities { bits } => commands::identities(bits),
        Command::ReducibleCensus(a) => commands::reducible_census(&resolve(&a, None)?),
        Command::Oracle { run, box_bound } => commands::oracle(&resolve(&run, Some(5000))?, box_bound),
        Command::LocalDensities { primes } => commands::local_densities(&primes),
        Command::SerreCheck => commands::serre_check(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
