//! Command-line front end: reads algebra descriptions, runs verification
//! pipelines and writes JSON reports.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or is
//! inconclusive, 2 for validation errors and 3 for parse or I/O errors.

pub mod input;
pub mod pipelines;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use liewedge_core::cones::DEFAULT_MAX_HALVINGS;
use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 2,
            CliError::Parse { .. } | CliError::Io { .. } => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "liewedge", version, about = "Exact verification pipelines for admissible Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra and print its center and derived subalgebra.
    Build(CommonArgs),
    /// Compute the derivation algebra and its inner/outer split.
    Derivations(CommonArgs),
    /// Detect the 3-grading of a derivation and check the classification conditions.
    Classify(CommonArgs),
    /// Certify that the cone spans both nonzero grading pieces.
    ConeSpan(CommonArgs),
    /// Scan derivations of a solvable algebra for cone-compatible gradings.
    NoGo(CommonArgs),
    /// Materialize a catalog entry and run its self-checks.
    Catalog(CatalogArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Input document or `catalog:<name>`.
    #[arg(long)]
    pub input: String,
    /// Functional on the center, e.g. "1,1" or "1/2 -3".
    #[arg(long)]
    pub functional: Option<String>,
    /// Derivation document overriding the one in the input.
    #[arg(long)]
    pub derivation: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_HALVINGS)]
    pub max_halvings: u32,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Build structure-constant inputs without the Jacobi check and report
    /// it as a separate verdict.
    #[arg(long)]
    pub defer_jacobi_check: bool,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Entry name such as `jacobi(2)`; lists the names when omitted.
    pub name: Option<String>,
    /// Alternative to NAME as `catalog:<name>`.
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Runs one subcommand and returns its report with timing filled in.
pub fn run(command: &Command) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = match command {
        Command::Catalog(a) => {
            let name = match (&a.name, &a.input) {
                (Some(n), _) => Some(n.as_str()),
                (None, Some(i)) => Some(i.strip_prefix("catalog:").unwrap_or(i)),
                (None, None) => None,
            };
            pipelines::catalog(name)?
        }
        Command::Build(a)
        | Command::Derivations(a)
        | Command::Classify(a)
        | Command::ConeSpan(a)
        | Command::NoGo(a) => {
            let mut problem = input::load_problem(&a.input, a.defer_jacobi_check)?;
            input::apply_overrides(&mut problem, a.functional.as_deref(), a.derivation.as_deref())?;
            match command {
                Command::Build(_) => pipelines::build(&problem),
                Command::Derivations(_) => pipelines::derivations(&problem),
                Command::Classify(_) => pipelines::classify(&problem)?,
                Command::ConeSpan(_) => pipelines::cone_span(&problem, a.max_halvings)?,
                Command::NoGo(_) => pipelines::no_go(&problem)?,
                Command::Catalog(_) => unreachable!("handled above"),
            }
        }
    };
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Where the report goes, if not standard output.
pub fn report_path(command: &Command) -> Option<&PathBuf> {
    match command {
        Command::Catalog(a) => a.report.as_ref(),
        Command::Build(a)
        | Command::Derivations(a)
        | Command::Classify(a)
        | Command::ConeSpan(a)
        | Command::NoGo(a) => a.report.as_ref(),
    }
}

/// Runs `cli`, writes the report and returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    match run(&cli.command) {
        Ok(report) => {
            let json = report.to_json();
            match report_path(&cli.command) {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &json) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return 3;
                    }
                }
                None => print!("{json}"),
            }
            if report.all_pass() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
