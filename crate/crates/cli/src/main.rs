use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use kwise_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = execute(&cli);
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(run.stdout.as_bytes());
    let _ = std::io::stderr().write_all(run.stderr.as_bytes());
    ExitCode::from(run.code as u8)
}
