use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact k-wise independent measures on {-1,1}^n and Khintchine-type constants.
#[derive(Debug, Parser)]
#[command(name = "kwise", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout (`construct`: the measure file).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for `table`; defaults to the number of logical CPUs.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named measure and write it in the measure file format.
    Construct {
        /// extremal-pairwise, antipodal, balanced or independent.
        kind: String,
        #[arg(long)]
        n: usize,
    },
    /// Check k-wise independence of a measure file.
    Verify {
        measure: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Solve one moment LP.
    Solve {
        #[arg(long)]
        n: usize,
        /// Moment order: an integer, or a fraction such as 5/2 (approximate).
        #[arg(long)]
        p: String,
        #[arg(long)]
        k: usize,
        /// orbit or full.
        #[arg(long, default_value = "orbit")]
        mode: String,
        /// "ones" or a comma-separated list of rationals.
        #[arg(long, default_value = "ones")]
        a: String,
    },
    /// Check the closed-form dual certificate against the pairwise orbit LP.
    Certify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
    },
    /// Sweep a grid of (n, p, k) cells at a = (1, ..., 1).
    Table {
        /// Values as "4..12:2", "4..8" or "4,6,9".
        #[arg(long)]
        n: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        k: String,
        #[arg(long, default_value = "orbit")]
        mode: String,
    },
    /// Split the fourth moment of a pairwise independent exchangeable measure.
    Decompose {
        measure: PathBuf,
        #[arg(long, default_value = "ones")]
        a: String,
    },
}
