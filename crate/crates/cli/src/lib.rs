//! Command-line front end for `curvlab`.
//!
//! Every command writes one table, as CSV (default) or JSON, to standard
//! output or to `--output`. Numbers carry 12 significant digits. Exit codes:
//! 0 on success, 1 when a numerical check fails or an oracle does not
//! converge, 2 on invalid arguments.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod parse;
pub mod report;
pub mod verify;

mod commands;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub use commands::render;

pub const TOOL: &str = "curvlab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    /// ħ = G = c = 1.
    Natural,
    /// CODATA 2018 SI values.
    Si,
}

#[derive(Debug, Parser)]
#[command(
    name = "curvlab",
    version,
    about = "Momentum-uncertainty bounds on geodesic balls of constant curvature"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    #[arg(long, global = true, value_enum, default_value_t = Units::Natural)]
    pub units: Units,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Closed-form eigenvalue against the shooting oracle.
    Eigen(EigenArgs),
    /// Bound curves σ_p ≥ ħ√λ₁ versus radius.
    Bound(CurveArgs),
    /// Metric factor, volume weight and ball volume.
    Volume(VolumeArgs),
    /// The full invariant grid, one pass/fail row per check.
    Verify(VerifyArgs),
    /// Rayleigh quotients of seeded random trial states.
    Trial(TrialArgs),
    /// Schwarzschild radius and Planck-length bound.
    Schwarzschild(SchwarzschildArgs),
    /// Exact bound against its first-order expansion.
    Sweep(CurveArgs),
}

fn scalar(s: &str) -> Result<f64, String> {
    parse::parse_scalar(s).map_err(|e| e.to_string())
}

fn list(s: &str) -> Result<Vec<f64>, String> {
    parse::parse_list(s).map_err(|e| e.to_string())
}

fn range(s: &str) -> Result<(f64, f64), String> {
    parse::parse_range(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EigenArgs {
    /// Sectional curvature K.
    #[arg(short = 'k', long = "curvature", visible_alias = "k", value_parser = scalar, allow_hyphen_values = true)]
    pub k: f64,
    /// Geodesic radius of the ball.
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub r0: f64,
    /// Mode index, starting at 1.
    #[arg(short, long, default_value_t = 1)]
    pub n: u32,
    /// Largest accepted relative discrepancy.
    #[arg(long, value_parser = scalar, default_value = "1e-8")]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CurveArgs {
    /// Comma-separated curvatures, e.g. `1,0,-1`.
    #[arg(short = 'k', long = "curvature", visible_alias = "k", value_parser = list, allow_hyphen_values = true, default_value = "1,0,-1")]
    pub k: ::std::vec::Vec<f64>,
    /// Radius range `start..end`, or a single radius.
    #[arg(short, long = "radius", value_parser = range, default_value = "0.05..pi")]
    pub r: (f64, f64),
    /// Number of radii, both ends included.
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VolumeArgs {
    #[arg(short = 'k', long = "curvature", visible_alias = "k", value_parser = scalar, allow_hyphen_values = true)]
    pub k: f64,
    /// Geodesic radius; `pi/sqrt(K)` itself is accepted on the sphere.
    #[arg(short, long = "radius", value_parser = scalar, allow_hyphen_values = true)]
    pub r: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_parser = scalar, default_value = "1e-8")]
    pub tolerance: f64,
    /// First seed of the variational suite.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Trial states per configuration.
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TrialArgs {
    #[arg(short = 'k', long = "curvature", visible_alias = "k", value_parser = scalar, allow_hyphen_values = true)]
    pub k: f64,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    pub r0: f64,
    /// Seed of the first state; state i uses seed + i.
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Polynomial degree of the trial states.
    #[arg(long, default_value_t = 6)]
    pub degree: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SchwarzschildArgs {
    /// Schwarzschild radius (length units of `--units`).
    #[arg(long = "rs", value_parser = scalar, allow_hyphen_values = true, default_value = "1")]
    pub r_s: f64,
    /// Relative tolerance of the numeric horizon integral.
    #[arg(long, value_parser = scalar, default_value = "1e-8")]
    pub tolerance: f64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] curvlab::Error),
    #[error("{0}")]
    Failed(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use curvlab::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                E::Domain(_)
                | E::InvalidMode(_)
                | E::InvalidQuadrature(_)
                | E::EmptyRange(_)
                | E::Decode(_),
            ) => 2,
            CliError::Core(_) => 1,
            CliError::Failed(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

/// Runs one command. Output goes to `--output` if set, else to `out`. A
/// failing check still writes its report before returning the error.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let (text, outcome) = render(cli)?;
    match &cli.output {
        Some(path) => std::fs::write(path, text.as_bytes())?,
        None => out.write_all(text.as_bytes())?,
    }
    outcome
}
