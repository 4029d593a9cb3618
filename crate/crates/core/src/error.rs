use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no primes below {0}")]
    NoPrimes(u64),

    #[error("cannot factorize zero")]
    ZeroArgument,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("checkpoint does not match the current run: {0}")]
    CheckpointMismatch(String),

    #[error("malformed checkpoint at line {line}: {msg}")]
    CheckpointFormat { line: usize, msg: String },

    #[error("malformed report: {0}")]
    ReportFormat(String),

    #[error("sieve block [{lo}, {hi}] exceeds the limit of {max} values")]
    BlockTooLarge { lo: u64, hi: u64, max: u64 },

    #[error(transparent)]
    Io(#[from] io::Error),
}
