//! `kelvin`: point evaluation, grid sweeps, benchmark table, engine
//! comparison, derivatives and quadrature weights.
//!
//! Exit codes: 0 success, 2 domain or usage error, 3 non-convergence,
//! 4 I/O error, 5 acceptance miss.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Failure;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if let Some(message) = failure.message() {
                eprintln!("kelvin: {message}");
            }
            ExitCode::from(failure.code())
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 2,
            Failure::NotConverged(_) => 3,
            Failure::Io(_) => 4,
            Failure::Acceptance(_) => 5,
        }
    }

    fn message(&self) -> Option<&str> {
        match self {
            Failure::Domain(m) | Failure::NotConverged(m) | Failure::Io(m) | Failure::Acceptance(m) => Some(m),
        }
    }
}
