//! Command-line front end over `ocif-core`: every numeric result comes from
//! the library; this crate parses flags and config files and writes CSV/JSON.

pub mod args;
pub mod commands;
pub mod error;
pub mod network;
pub mod output;

use std::io::Write;

pub use args::{Cli, Command};
pub use error::CliError;

/// Runs one command and returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Ocif(a) => commands::ocif(a, stdout, stderr),
        Command::Compare(a) => commands::compare(a, stdout, stderr),
        Command::Cdma(a) => commands::cdma(a, stdout),
        Command::Ofdma(a) => commands::ofdma(a, stdout),
    }
}
