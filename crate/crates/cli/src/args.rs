use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "kelvin",
    version,
    about = "Wavelike term of the Kelvin wave-source Green's function",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate I (or I∞ with --infty) at one point.
    Eval(EvalArgs),
    /// Sweep a grid and write CSV.
    Grid(GridArgs),
    /// Recompute the twelve benchmark values of I∞(−1, y, z).
    Table1(Table1Args),
    /// Compare the collocation and quadrature engines over a grid.
    Compare(GridArgs),
    /// Directional derivative of I at one point.
    Deriv(DerivArgs),
    /// Print the Clenshaw–Curtis nodes and weights for n intervals.
    Weights(WeightsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    /// Collocation with the closed-form correction.
    Levin,
    /// Collocation without the correction.
    LevinPlain,
    Cc,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Absolute tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,
    /// Fixed collocation order (otherwise doubled until --eps is met).
    #[arg(short = 'M', long = "order")]
    pub order: Option<usize>,
    /// Report I∞ = Im{I(x,y,z) + I(x,y,−z)}/π instead of I.
    #[arg(long)]
    pub infty: bool,
    /// Source depth offset added to y.
    #[arg(long, default_value_t = 0.0)]
    pub y0: f64,
    /// Output file (stdout when absent).
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write 0 in timing columns so output is reproducible byte for byte.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(short = 'x', allow_hyphen_values = true)]
    pub x: f64,
    #[arg(short = 'y', allow_hyphen_values = true)]
    pub y: f64,
    #[arg(short = 'z', allow_hyphen_values = true)]
    pub z: f64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: f64,
    /// Number of x values, endpoints included.
    #[arg(long)]
    pub nx: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub z_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub z_max: f64,
    /// Number of z values, endpoints included.
    #[arg(long)]
    pub nz: usize,
    /// Comma-separated list of y values.
    #[arg(long = "y", value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub ys: Vec<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DerivArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// Direction (l1,l2,l3).
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true, default_value = "1,0,0")]
    pub dir: Vec<f64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    /// Even number of node intervals.
    #[arg(short = 'n')]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}
