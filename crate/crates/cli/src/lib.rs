//! Front end for the `cashift` binary: flag parsing, dispatch and report
//! output.
//!
//! Exit codes: 0 on success, 1 when a check's verdict is negative, 2 on
//! usage, parse or computation errors.

mod commands;
mod config;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde::Serialize;
use thiserror::Error;

pub use config::{Command, Format, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cashift::Error),
    #[error("missing required flag {0}")]
    Missing(&'static str),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
struct Report<'a> {
    command: &'static str,
    config: &'a RunConfig,
    result: serde_json::Value,
    version: &'static str,
}

/// Runs with process stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    exit_code(execute(cfg, out), err)
}

fn exit_code(outcome: Result<bool, CliError>, err: &mut dyn Write) -> i32 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cfg: RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let cfg = cfg.resolve()?;
    let outcome = commands::dispatch(&cfg)?;
    let bytes = match (cfg.format, outcome.image) {
        (Format::Pgm, Some(img)) => img,
        (Format::Text, _) => format!("{}\n", outcome.text).into_bytes(),
        _ => {
            let report = Report {
                command: cfg.command.name(),
                config: &cfg,
                result: outcome.result,
                version: VERSION,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, &bytes)?,
        None => out.write_all(&bytes)?,
    }
    Ok(outcome.ok)
}
