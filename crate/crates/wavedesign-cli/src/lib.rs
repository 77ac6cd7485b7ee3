//! Command-line front end: `design`, `eval`, `bench` and `verify`.
//!
//! Exit codes: 0 success, 1 runtime or verification failure, 2 solver hit the
//! iteration cap, 64 bad usage.

pub mod args;
pub mod commands;
pub mod csvio;
pub mod error;
pub mod meta;

use std::ffi::OsString;

use clap::Parser;

pub use args::Cli;
pub use error::{CliError, CliResult, EXIT_USAGE};
pub use meta::RunMetadata;

pub fn execute(cli: &Cli) -> CliResult<i32> {
    match &cli.command {
        args::Command::Design(a) => commands::cmd_design(a),
        args::Command::Eval(a) => commands::cmd_eval(a),
        args::Command::Bench(a) => commands::cmd_bench(a),
        args::Command::Verify(a) => commands::cmd_verify(a),
    }
}

/// Parses `argv` (including the program name) and runs it, returning the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
