//! Library half of the `mindyn` command-line tool.
//!
//! Argument parsing lives in [`args`], config loading and validation in
//! [`config`], and the subcommands in [`commands`]. The binary only parses
//! arguments, calls [`run`] and maps errors to exit codes.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use std::process::ExitCode;

pub use args::Cli;
pub use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Validation(_) => ExitCode::from(2),
            CliError::Io(_) => ExitCode::from(3),
        }
    }
}

impl From<mindyn::Error> for CliError {
    fn from(e: mindyn::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

/// Runs one parsed invocation, writing its output to stdout or the
/// configured file.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let report = commands::execute(&cli)?;
    output::emit(&report)
}
