//! `sigma-bias`: certified density bounds and σ sieves for `mn` versus `mn + 1`.
//!
//! Exit codes: 0 success, 1 I/O or internal failure, 2 usage or configuration
//! error, 3 checkpoint mismatch.

mod args;
mod bound;
mod check;
mod lambda;
mod output;
mod sieve;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn exit_code(err: &anyhow::Error) -> u8 {
    use sigma_bias::Error;
    match err.downcast_ref::<Error>() {
        Some(Error::CheckpointMismatch(_) | Error::CheckpointFormat { .. }) => 3,
        Some(
            Error::Config(_)
            | Error::Precondition(_)
            | Error::NoPrimes(_)
            | Error::ZeroArgument
            | Error::BlockTooLarge { .. },
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bound(a) => bound::run(a),
        Command::Sieve(a) => sieve::run(a),
        Command::Lambda(a) => lambda::run(a),
        Command::Check(a) => check::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
