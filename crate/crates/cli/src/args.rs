use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use pdmeans_core::suite::{PropertyId, DEFAULT_P_GRID, DEFAULT_T_VALUES};

#[derive(Debug, Parser)]
#[command(
    name = "pdmeans",
    version,
    about = "Means of positive definite matrices and their norm inequalities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the property catalogue over seeded random instances.
    Check(CheckArgs),
    /// Reproduce the 2x2 pair where pointwise eigenvalue domination fails.
    PaperExample,
    /// Emit lambda_j of the power mean across a p grid as CSV.
    ScanP(ScanArgs),
    /// Print every mean of two matrices with its Ky Fan and Schatten norms.
    Means(MeansArgs),
    /// Write one seeded random positive definite matrix.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

/// Inclusive range written `lo:hi`, or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimRange(pub usize, pub usize);

impl FromStr for DimRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad dimension `{v}`: {e}"))
        };
        match s.split_once(':') {
            Some((lo, hi)) => Ok(DimRange(parse(lo)?, parse(hi)?)),
            None => {
                let d = parse(s)?;
                Ok(DimRange(d, d))
            }
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct CheckArgs {
    /// Master seed; instance i uses seed + i. MEANS_SEED overrides it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Dimension range, e.g. 2:6.
    #[arg(long, default_value = "2:6")]
    pub dims: DimRange,
    /// Number of instances.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Largest condition exponent; eigenvalues lie in [10^-c, 10^c].
    #[arg(long, default_value_t = 3.0)]
    pub cond_max: f64,
    /// Interpolation weights.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = DEFAULT_T_VALUES)]
    pub t: Vec<f64>,
    /// Exponent grid, ascending.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = DEFAULT_P_GRID)]
    pub p: Vec<f64>,
    /// Comma-separated property ids (default: all).
    #[arg(long, value_delimiter = ',')]
    pub properties: Option<Vec<String>>,
    /// Relative tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Report path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
}

impl CheckArgs {
    pub fn property_ids(&self) -> Result<Vec<PropertyId>, String> {
        match &self.properties {
            None => Ok(PropertyId::ALL.to_vec()),
            Some(list) => list
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.parse::<PropertyId>().map_err(|e| e.to_string()))
                .collect(),
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub t: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = DEFAULT_P_GRID)]
    pub p: Vec<f64>,
    /// CSV path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct MeansArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub t: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub p: f64,
}

#[derive(Debug, clap::Args)]
pub struct GenArgs {
    #[arg(long)]
    pub dim: usize,
    /// Condition exponent; eigenvalues lie in [10^-cond, 10^cond].
    #[arg(long, default_value_t = 0.0)]
    pub cond: f64,
    /// MEANS_SEED overrides it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
