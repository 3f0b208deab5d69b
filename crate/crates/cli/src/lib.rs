//! Command-line front end of `kgscreen`: published-table reproduction,
//! parameter sweeps, wave-function and potential samples as CSV, and a
//! verification suite.

pub mod commands;
pub mod config;
pub mod format;
pub mod reference;
pub mod verify;

use std::fmt;
use std::io::{self, Write};
use std::path::Path;

use clap::Parser;

pub use config::{Cli, Command, Options, RunConfig};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    VerifyFailed = 1,
    Usage = 2,
}

#[derive(Debug)]
pub enum CliError {
    /// Invalid flag, config file or range.
    Usage(String),
    Io(io::Error),
    Numeric(kgscreen::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Numeric(e) => write!(f, "numerical error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<kgscreen::Error> for CliError {
    fn from(e: kgscreen::Error) -> Self {
        CliError::Numeric(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Runs one invocation and returns the exit status.
pub fn run(cli: Cli) -> Status {
    match execute(cli) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("kgscreen: {e}");
            match e {
                CliError::Usage(_) | CliError::Io(_) => Status::Usage,
                CliError::Numeric(_) => Status::VerifyFailed,
            }
        }
    }
}

fn execute(cli: Cli) -> Result<Status> {
    let (command, options) = cli.command.split();
    let cfg = RunConfig::resolve(command, options)?;
    let out = cfg.out.clone();
    let (text, status) = match command {
        config::CommandKind::Table => (commands::table(&cfg)?, Status::Ok),
        config::CommandKind::SweepDelta => (commands::sweep_delta(&cfg)?, Status::Ok),
        config::CommandKind::SweepN => (commands::sweep_n(&cfg)?, Status::Ok),
        config::CommandKind::Wavefunction => (commands::wavefunction(&cfg)?, Status::Ok),
        config::CommandKind::Potential => (commands::potential(&cfg)?, Status::Ok),
        config::CommandKind::Solve => (commands::solve(&cfg)?, Status::Ok),
        config::CommandKind::Verify => {
            let report = verify::run(&cfg)?;
            let status = if report.all_passed() { Status::Ok } else { Status::VerifyFailed };
            (report.render(), status)
        }
    };
    emit(out.as_deref(), &text)?;
    Ok(status)
}

/// Parses `args` (including the program name) and runs them.
pub fn run_from<I, T>(args: I) -> Status
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                Status::Usage
            } else {
                Status::Ok
            }
        }
    }
}
