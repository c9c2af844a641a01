use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "revival",
    version,
    about = "Rational-time revival profiles for periodic dispersive equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate S^k_{j,r} and C^k_{j,r} as `x,S,C`.
    Polylog(PolylogArgs),
    /// Solution of the periodic Riemann problem as `x,u`.
    Profile(ProfileArgs),
    /// Closed form against the truncated series as `x,u_closed,u_series,abs_err`.
    Compare(CompareArgs),
    /// Tabulate a convolution kernel as `x,re,im`.
    Kernel(KernelArgs),
    /// Run the numerical verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Number of grid points, endpoints included.
    #[arg(long = "grid", default_value_t = 1001, value_parser = clap::value_parser!(u64).range(2..))]
    pub points: u64,
    #[arg(long, default_value_t = -PI, allow_hyphen_values = true)]
    pub x_lo: f64,
    #[arg(long, default_value_t = PI, allow_hyphen_values = true)]
    pub x_hi: f64,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PolylogArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub j: u32,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Equation {
    Bo,
    Ilw,
    Smith,
    Kdv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Series,
}

#[derive(Debug, Args)]
pub struct EquationArgs {
    #[arg(long, value_enum)]
    pub equation: Equation,
    #[arg(long, default_value_t = 1)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub q: u64,
    /// Depth parameter; required for ilw and smith only.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Series truncation |k| <= N.
    #[arg(long, default_value_t = 100_000)]
    pub nmodes: u64,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub eq: EquationArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    pub method: MethodArg,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub eq: EquationArgs,
    /// ILW only: compare the ILW series with the BO series translated by t/delta.
    #[arg(long)]
    pub shift_bo: bool,
    /// Rows closer than this to a singular point are left out of the sup.
    /// Defaults to 0.3, or a quarter of the node spacing when that is smaller.
    #[arg(long)]
    pub buffer: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Hilbert,
    Ilw,
    IlwZeta,
    Smith,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, value_enum)]
    pub kind: KernelArg,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Lattice truncation of the ILW and Smith sums.
    #[arg(long, default_value_t = 400)]
    pub truncation: usize,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Multiplies every tolerance.
    #[arg(long, default_value_t = 1.0)]
    pub tolerance_scale: f64,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
}
