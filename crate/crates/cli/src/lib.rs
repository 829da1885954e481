//! The `kwise` command line: construct and verify measures, solve moment LPs, check the dual
//! certificate, sweep constant tables, and decompose fourth moments.

pub mod args;
pub mod commands;
pub mod error;
pub mod ranges;
pub mod report;
pub mod table;

pub use args::{Cli, Command, Format};
pub use commands::{execute, Execution};
pub use error::CliError;
