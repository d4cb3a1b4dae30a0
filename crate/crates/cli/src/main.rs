//! `nsg`: exact analysis of numerical semigroups from the command line.
//!
//! Subcommands: `analyze` (invariants, classification, numerator, syzygy
//! table), `verify` (every applicable identity family, exact), `partition`
//! (denumerant vs wave decomposition over a range), `waves` (wave
//! coefficients and values), `count` (how many theorem identities a tuple
//! carries). Exit codes: 0 all checks pass, 1 an identity failed, 2 input
//! error.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "nsg", version, about = "Exact invariants, Hilbert-series numerators, partition \
functions and syzygy-degree identities of numerical semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Profile, classification flags, numerator and syzygy table.
    Analyze {
        /// Comma-separated positive integers, e.g. 3,5,7
        generators: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Run every applicable identity family and report pass/fail exactly.
    Verify {
        /// Comma-separated positive integers, e.g. 3,5,7
        generators: String,
        /// Path to a syzygy-table JSON file ({"generators":[...],"kinds":[[...],...]})
        #[arg(long)]
        table: Option<std::path::PathBuf>,
        /// Comma-separated family filter (e.g. theorem1,theorem2,wave-sum)
        #[arg(long)]
        families: Option<String>,
        /// Upper end of the wave-sum comparison range (default F + sigma_1)
        #[arg(long)]
        wave_max: Option<i64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
        /// Worker threads for independent checks (default $NSG_PARALLELISM or 1)
        #[arg(long)]
        parallelism: Option<usize>,
    },
    /// Table of the denumerant against the wave decomposition over a range.
    Partition {
        /// Comma-separated positive integers, e.g. 3,5,7
        generators: String,
        /// Inclusive range a..b or a single integer; negatives allowed with --waves-only
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Skip the dynamic program (required for negative s)
        #[arg(long)]
        waves_only: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
        /// Worker threads for row evaluation (default $NSG_PARALLELISM or 1)
        #[arg(long)]
        parallelism: Option<usize>,
    },
    /// Wave coefficients per modulus and their values over a range.
    Waves {
        /// Comma-separated positive integers, e.g. 3,5,7
        generators: String,
        /// Inclusive range a..b or a single integer
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
        /// Worker threads for row evaluation (default $NSG_PARALLELISM or 1)
        #[arg(long)]
        parallelism: Option<usize>,
    },
    /// The number of power-sum and root-of-unity identities of the tuple.
    Count {
        /// Comma-separated positive integers, e.g. 3,5,7
        generators: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze { generators, output } => commands::analyze(&generators, output),
        Command::Verify { generators, table, families, wave_max, output, parallelism } => {
            commands::verify(&generators, table.as_deref(), families.as_deref(), wave_max, output, parallelism)
        }
        Command::Partition { generators, s, waves_only, output, parallelism } => {
            commands::partition(&generators, &s, waves_only, output, parallelism)
        }
        Command::Waves { generators, s, output, parallelism } => {
            commands::waves(&generators, &s, output, parallelism)
        }
        Command::Count { generators, output } => commands::count(&generators, output),
    };
    match code {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
