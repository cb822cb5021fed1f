//! Command-line front end: argument parsing, dispatch and report emitters.

mod args;
mod commands;
mod emit;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, Format, RunArgs};
pub use emit::Report;

/// Minimum accepted `--precision`.
pub const MIN_PRECISION: u32 = 10;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] stairflow::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Library(e) if e.is_input_error() => 2,
            _ => 1,
        }
    }
}

/// Parses `argv`, runs one subcommand and returns the process exit code.
///
/// 0 means success, 1 a failed construction or verification, 2 bad input.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the parsed command; `Ok(false)` reports a failed check.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    if cli.run.precision < MIN_PRECISION {
        return Err(CliError::Usage(format!("--precision must be at least {MIN_PRECISION}")));
    }
    if cli.run.threads == 0 {
        return Err(CliError::Usage("--threads must be positive".into()));
    }
    let report = commands::dispatch(&cli.command, &cli.run)?;
    let text = report.render(cli.run.format)?;
    match &cli.run.output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(report.ok)
}
