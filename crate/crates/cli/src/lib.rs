//! The `hexatile` command line: sampling, density tables, kernel queries,
//! arctic regions, oracle verification and SVG rendering.

mod args;
mod commands;
pub mod formats;
pub mod svg;
pub mod verify;

use std::ffi::OsString;

use clap::Parser;
use thiserror::Error;

pub use args::{Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Flag(String),
    #[error("{0}")]
    Range(String),
    #[error("{0}")]
    Tolerance(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Format(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Format(_) => exit::IO,
            CliError::Flag(_) => exit::FLAG,
            CliError::Range(_) => exit::RANGE,
            CliError::Tolerance(_) => exit::TOLERANCE,
        }
    }
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const FLAG: i32 = 2;
    pub const RANGE: i32 = 3;
    pub const TOLERANCE: i32 = 4;
}

/// Parses `argv` and runs the subcommand, printing errors to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::FLAG } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return exit::FLAG;
        }
        // Fails only if a pool already exists, which keeps its own size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match commands::dispatch(cli.command) {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
