//! Command-line front end for `sympair`.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical mismatch is
//! found, 2 for usage and validation errors. Machine-readable output goes to
//! stdout (or `--out`); progress and diagnostics go to stderr.

mod commands;
mod output;
pub mod sweep;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sympair_core::{CodeError, Field, FieldElement, FieldError, SpectrumError};
use thiserror::Error;

pub use commands::run;
pub use sweep::{SweepConfig, SweepFile};

#[derive(Debug, Parser)]
#[command(
    name = "sympair",
    version,
    about = "MDS symbol-pair codes: construction, verification and pair-weight spectra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the code description, its evaluation layout and a generator matrix
    Construct(CodeArgs),
    /// Compare the exhaustive minimum pair distance with n - k + 2
    Verify(CodeArgs),
    /// Enumerate the pair-weight distribution and compare it with the closed form
    Spectrum(CodeArgs),
    /// Count the polynomial families behind the dimension 3 and 4 closed forms
    Census(CensusArgs),
    /// Run verify, spectrum and census over a grid of parameters
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Field order (a prime power)
    #[arg(long)]
    pub q: Option<u64>,
    /// Field characteristic, as an alternative to --q
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree over GF(p)
    #[arg(long, requires = "p")]
    pub e: Option<u32>,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// Number of alpha points; defaults to the length of --alphas
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub beta1: Option<u64>,
    #[arg(long)]
    pub beta2: Option<u64>,
    /// Comma-separated canonical encodings of the alpha points
    #[arg(long, value_delimiter = ',')]
    pub alphas: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the result here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest number of messages or polynomials to enumerate
    #[arg(long)]
    pub ceiling: Option<u64>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Code dimension
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub points: PointArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub points: PointArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Sweep description (key = value lines); the default grid is used without it
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl FieldArgs {
    pub fn resolve(&self) -> Result<Field, CliError> {
        match (self.q, self.p) {
            (None, None) => Err(CliError::Usage("one of --q or --p is required".into())),
            (Some(q), None) => Ok(Field::from_order(q)?),
            (q, Some(p)) => {
                let field = Field::new(p, self.e.unwrap_or(1))?;
                match q {
                    Some(q) if q != field.order() as u64 => {
                        Err(CliError::Usage(format!("--q {q} disagrees with --p {p} --e {}", self.e.unwrap_or(1))))
                    }
                    _ => Ok(field),
                }
            }
        }
    }
}

/// Resolved point choices; `None` means the default.
pub struct Points {
    pub m: usize,
    pub beta1: Option<FieldElement>,
    pub beta2: Option<FieldElement>,
    pub alphas: Option<Vec<FieldElement>>,
}

impl PointArgs {
    pub fn resolve(&self, field: &Field) -> Result<Points, CliError> {
        let el = |v: u64| field.element(v).map_err(CliError::from);
        let alphas: Option<Vec<FieldElement>> =
            self.alphas.as_ref().map(|a| a.iter().map(|&v| el(v)).collect()).transpose()?;
        let m = match (self.m, &alphas) {
            (Some(m), _) => m,
            (None, Some(a)) => a.len(),
            (None, None) => return Err(CliError::Usage("--m is required (or give --alphas)".into())),
        };
        Ok(Points { m, beta1: self.beta1.map(el).transpose()?, beta2: self.beta2.map(el).transpose()?, alphas })
    }
}
