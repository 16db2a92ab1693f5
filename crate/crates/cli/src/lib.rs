//! Command runners behind the `hermcodes` binary.
//!
//! Every command returns an [`Outcome`]: the text to emit and an exit
//! status. Reports are JSON with a `schema` field and no timestamps, so a
//! rerun with the same flags produces identical bytes.

pub mod commands;
pub mod config;
pub mod verify;

use std::fmt;
use std::io::Write;

use hermcodes_core::Error;
use serde::Serialize;

pub use config::{Cli, Command, Common, RunConfig};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    Failure = 1,
    Budget = 2,
    Unknown = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }

    /// The more severe of two statuses; failures outrank refusals.
    pub fn worst(self, other: Exit) -> Exit {
        let rank = |e: Exit| match e {
            Exit::Pass => 0,
            Exit::Unknown => 1,
            Exit::Budget => 2,
            Exit::Failure => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit: Exit,
    pub body: String,
}

impl Outcome {
    pub fn json<T: Serialize>(value: &T, exit: Exit) -> Outcome {
        let mut body = serde_json::to_string_pretty(value).expect("reports serialize");
        body.push('\n');
        Outcome { exit, body }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            exit: Exit::Failure,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::BudgetExceeded { .. } => Exit::Budget,
            _ => Exit::Failure,
        };
        CliError {
            exit,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::invalid(e.to_string())
    }
}

/// Dispatches a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let shard = match &cli.command {
        Command::Oracle { shard, .. } => shard.parse()?,
        _ => hermcodes_core::Shard::FULL,
    };
    let cfg = RunConfig::new(&cli.common, shard)?;
    match &cli.command {
        Command::Params => commands::cmd_params(&cfg),
        Command::Verify { suite } => verify::cmd_verify(&cfg, *suite),
        Command::Oracle { variety, .. } => commands::cmd_oracle(&cfg, *variety),
        Command::Merge { reports } => commands::cmd_merge(&cfg, reports),
        Command::Construct => commands::cmd_construct(&cfg),
        Command::Export { what } => commands::cmd_export(&cfg, *what),
    }
}

/// Writes the outcome body to `--out` or stdout.
pub fn emit(cfg_out: Option<&std::path::Path>, outcome: &Outcome) -> Result<(), CliError> {
    match cfg_out {
        Some(path) => std::fs::write(path, &outcome.body)?,
        None => std::io::stdout().lock().write_all(outcome.body.as_bytes())?,
    }
    Ok(())
}
