use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20261015;

#[derive(Debug, Parser, Serialize)]
#[command(name = "bifree", version, about = "Bi-free cumulants, compound Poisson laws and their models")]
pub struct Cli {
    /// Seed for every random stream
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,

    /// Report format (defaults depend on the subcommand)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for parallel modules; 0 uses every core
    #[arg(long, global = true, default_value_t = 0)]
    #[serde(skip)]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Non-crossing partitions
    #[command(subcommand)]
    Nc(NcCommand),
    /// Bi-non-crossing partitions
    #[command(subcommand)]
    Bnc(BncCommand),
    /// Moment table to cumulant table
    #[command(subcommand)]
    Cumulants(CumulantsCommand),
    /// Cumulant table to moment table
    #[command(subcommand)]
    Moments(MomentsCommand),
    /// Compound bi-free Poisson laws
    #[command(subcommand)]
    Cbp(CbpCommand),
    /// Random matrix models
    #[command(subcommand)]
    Simulate(SimulateCommand),
    /// Full Fock space model
    #[command(subcommand)]
    Fock(FockCommand),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NcCommand {
    /// List NC(n)
    List(SizeArg),
    /// Mobius function mu(pi, 1_n) over NC(n)
    Mobius(SizeArg),
}

#[derive(Debug, Args, Serialize)]
pub struct SizeArg {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BncCommand {
    /// List BNC(n, chi)
    List(ChiArg),
}

#[derive(Debug, Args, Serialize)]
pub struct ChiArg {
    /// Side pattern such as `lrlr`
    #[arg(long)]
    pub chi: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CumulantsCommand {
    FromMoments(InputArg),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentsCommand {
    FromCumulants(InputArg),
}

#[derive(Debug, Args, Serialize)]
pub struct InputArg {
    /// JSON word table
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CbpCommand {
    /// Moments (or cumulants) of a compound bi-free Poisson law
    Build(BuildArgs),
    /// Limit theorem series over N
    Limit(LimitArgs),
    /// Poisson approximations of a distribution over n
    Approx(ApproxArgs),
    /// Positivity of the moment Gram matrix
    Psd(PsdArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct BuildArgs {
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// JSON moment table of the jump law
    #[arg(long)]
    pub jump: PathBuf,
    /// Degree cap (defaults to the cap of the jump table)
    #[arg(long)]
    pub deg: Option<usize>,
    /// Emit the cumulant table instead of the moments
    #[arg(long)]
    pub cumulants: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct LimitArgs {
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long)]
    pub jump: PathBuf,
    #[arg(long = "N", value_delimiter = ',', default_value = "8,16,32,64")]
    #[serde(rename = "N")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    pub deg: usize,
}

/// A distribution given either by its moment table or as a compound
/// Poisson law with a jump table.
#[derive(Debug, Args, Serialize)]
pub struct SourceArgs {
    /// JSON moment table of the distribution
    #[arg(long = "in", conflicts_with = "jump")]
    pub input: Option<PathBuf>,
    /// JSON moment table of a jump law
    #[arg(long)]
    pub jump: Option<PathBuf>,
    /// Rate used with --jump
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    pub deg: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct PsdArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 2)]
    pub deg: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimulateCommand {
    /// Single-faced compound Wishart model
    Wishart(WishartArgs),
    /// Two-faced model with left and right copies
    Bimatrix(BimatrixArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct EnsembleArgs {
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Joint atoms `x1,x2,...:weight;...`
    #[arg(long)]
    pub atoms: String,
    #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 4)]
    pub max_word: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct WishartArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct BimatrixArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    /// Number of leading atom coordinates that are left variables
    #[arg(long, default_value_t = 1)]
    pub left: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FockCommand {
    /// Cumulants of the truncated W operators
    Verify(FockArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct FockArgs {
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Joint atoms `x,y:weight;...` of the commuting pair (left, right)
    #[arg(long)]
    pub atoms: String,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: usize,
    /// Longest word checked (defaults to N + 2)
    #[arg(long)]
    pub max_m: Option<usize>,
    /// Fock truncation depth (defaults to the smallest exact one)
    #[arg(long)]
    pub depth: Option<usize>,
}
