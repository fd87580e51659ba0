//! Command-line front end for `cylinder-compounds`.
//!
//! The binary is a thin wrapper around [`run`]; everything it prints goes
//! through a caller-supplied writer so commands can be tested in-process.

mod args;
mod commands;
pub mod export;
mod format;
pub mod verify;

use std::io;

pub use args::{Cli, Command, CompoundArgs, DeltaSpec, OutputFormat, PairArg, RadiusSpec};
pub use commands::{minima_report, named_delta, run};
pub use format::sig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cylinder_compounds::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("malformed input: {0}")]
    Input(String),
}

impl CliError {
    /// 2 for bad arguments or refused requests, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Core(cylinder_compounds::Error::Domain(_)) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
