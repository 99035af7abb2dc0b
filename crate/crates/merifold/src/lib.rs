//! Command-line front end for `merifold-core`: argument grammar, dispatch,
//! JSON/DOT/text emission and the exit-code contract.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 when an instance check of a
//! cited lemma fails.

pub mod cli;
pub mod commands;
pub mod dot;
pub mod report;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use report::{emit, Format, RunReport, Status};

/// Seed for randomized commands, from `MERIFOLD_SEED` (default 0).
pub fn seed_from_env() -> Result<u64, String> {
    match std::env::var("MERIFOLD_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| format!("MERIFOLD_SEED is not an unsigned integer: {s}")),
        Err(_) => Ok(0),
    }
}

/// Parses `argv`, runs the command and returns the bytes for stdout with the
/// exit code.
pub fn main_with<I, T>(argv: I, seed: u64) -> (Vec<u8>, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match cli::Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return (e.to_string().into_bytes(), 0)
        }
        Err(e) => {
            let report = RunReport::usage(e.to_string().trim_end());
            return (emit(&report, Format::Json), report.exit_code());
        }
    };
    let report = commands::run(&cli, seed);
    (emit(&report, cli.format), report.exit_code())
}
