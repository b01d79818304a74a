mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Vec::new();
    let result = commands::run(cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = stdout.write_all(&out).and_then(|_| stdout.flush());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Compute(msg)) => {
            eprintln!("bwtcat: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("bwtcat: {msg}");
            ExitCode::from(2)
        }
    }
}
