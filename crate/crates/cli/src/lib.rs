//! Command-line front end for `virial-core`.
//!
//! Exit codes: 0 success, 1 invalid input, 2 a check found a counterexample,
//! 3 a request exceeded a documented size cap.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use virial_core::Error;

pub use config::{Flags, Format, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "virial", version, about = "Convergence-radius bounds for Mayer and virial series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Integrals, convergence radii and their ratio for each beta
    Radii,
    /// Partition-scheme, tree-graph identity and stability-gap checks
    Verify,
    /// Monte Carlo Mayer coefficients against the three coefficient bounds
    Mayer,
    /// Multi-start estimates of finite-n stability constants
    Stability,
    /// Tabulate g(u) and the tree function w(x)
    Gfun,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Counterexample,
    Capacity,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Counterexample => 2,
            Status::Capacity => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Validation(String),
    Capacity(String),
    Io(String),
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }

    pub fn io(msg: impl Into<String>) -> Self {
        CliError::Io(msg.into())
    }

    pub fn from_core(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => CliError::Capacity(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 1,
            CliError::Capacity(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Capacity(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

/// Run one command to completion, including writing its report.
pub fn run(cli: &Cli) -> Result<Status, CliError> {
    let cfg = RunConfig::resolve(&cli.flags)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CliError::io(format!("cannot start worker pool: {e}")))?;
    let (text, status) = pool.install(|| commands::execute(cli.command, &cfg))?;
    output::emit(&text, cfg.out.as_deref())?;
    Ok(status)
}

/// [`run`] with diagnostics on stderr, mapped to a process exit code.
pub fn main_with(cli: &Cli) -> ExitCode {
    match run(cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("virial: {e}");
            ExitCode::from(e.code())
        }
    }
}
