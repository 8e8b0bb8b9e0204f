use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use satotate::coefficients::Curve;
use satotate::sato_tate::Interval;

#[derive(Debug, Parser)]
#[command(name = "satotate", version, about = "Sato-Tate statistics and symmetric-power sums for newforms")]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, default_value = ".satotate-cache")]
    pub cache_dir: PathBuf,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build or extend the coefficient cache of a newform.
    Coefficients(CoefficientsArgs),
    /// Angle counts per interval over a geometric grid of x.
    Satotate(SatoTateArgs),
    /// Chebyshev sums Φ, ψ, Ψ and the smoothing error assembly.
    Chebsums(ChebsumsArgs),
    /// Majorant/minorant kernels and their Chebyshev coefficients.
    Smooth(SmoothArgs),
    /// Error budget in log space.
    Budget(BudgetArgs),
    /// Truncated zero sums: Riemann ψ comparison, synthetic zeros, bound path.
    Explicit(ExplicitArgs),
}

/// Which newform to work with.
#[derive(Debug, Clone, Args)]
pub struct FormArgs {
    /// The discriminant form Δ (weight 12, level 1).
    #[arg(long, conflicts_with_all = ["curve", "qexp"])]
    pub delta_form: bool,

    /// Elliptic curve `a1,a2,a3,a4,a6` (needs --level).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "qexp")]
    pub curve: Option<Curve>,

    /// q-expansion file with `n a(n)` lines (needs --weight, --level).
    #[arg(long)]
    pub qexp: Option<PathBuf>,

    #[arg(long)]
    pub level: Option<u64>,

    #[arg(long)]
    pub weight: Option<u32>,

    #[arg(long)]
    pub label: Option<String>,
}

#[derive(Debug, Args)]
pub struct CoefficientsArgs {
    #[command(flatten)]
    pub form: FormArgs,

    #[arg(long)]
    pub xmax: u64,
}

#[derive(Debug, Args)]
pub struct SatoTateArgs {
    #[command(flatten)]
    pub form: FormArgs,

    #[arg(long)]
    pub xmax: u64,

    /// First grid point.
    #[arg(long, default_value_t = 16.0)]
    pub xmin: f64,

    /// Grid ratio.
    #[arg(long, default_value_t = 2.0)]
    pub ratio: f64,

    /// Interval `alpha,beta` in radians; repeatable.
    #[arg(long = "interval", allow_hyphen_values = true)]
    pub intervals: Vec<Interval>,
}

#[derive(Debug, Args)]
pub struct ChebsumsArgs {
    #[command(flatten)]
    pub form: FormArgs,

    /// Values of x; repeatable.
    #[arg(long = "x", required = true)]
    pub xs: Vec<f64>,

    #[arg(long, default_value_t = 1)]
    pub n_min: usize,

    #[arg(long, default_value_t = 8)]
    pub n_max: usize,

    /// Interval for the smoothing assembly.
    #[arg(long, requires_all = ["delta", "r"])]
    pub interval: Option<Interval>,

    #[arg(long)]
    pub delta: Option<f64>,

    #[arg(long = "R", id = "r")]
    pub r: Option<u32>,

    /// Truncation of the Chebyshev series in the assembly.
    #[arg(long, default_value_t = 32)]
    pub series_terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SmoothOutput {
    /// Fourier coefficients of the majorant kernel.
    Kernel,
    /// Fourier coefficients of the minorant kernel.
    MinorantKernel,
    /// Chebyshev-basis coefficients of both.
    Chebyshev,
    /// Parameters and bound checks only.
    Summary,
}

#[derive(Debug, Args)]
pub struct SmoothArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub interval: Interval,

    #[arg(long)]
    pub delta: f64,

    #[arg(long = "R")]
    pub r: u32,

    #[arg(long, value_enum, default_value_t = SmoothOutput::Kernel)]
    pub output: SmoothOutput,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[arg(long = "R", num_args = 1.., value_delimiter = ',', default_value = "24")]
    pub r: Vec<u32>,

    /// log log x; several values give a sweep.
    #[arg(long = "loglogx", num_args = 1.., value_delimiter = ',', default_value = "100")]
    pub log_log_x: Vec<f64>,

    /// Use this log δ instead of the balanced choice.
    #[arg(long, allow_hyphen_values = true)]
    pub log_delta: Option<f64>,

    /// Interval for the β − α > 2πδ flag.
    #[arg(long)]
    pub interval: Option<Interval>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExplicitMode {
    /// Compare ψ(x) with the zero sum over Riemann zeros.
    Zeta,
    /// Generate synthetic zeros for Sym^n of a newform.
    Synthesize,
    /// Zero sum at the edge of the zero-free region against the ψ bound.
    BoundCheck,
}

#[derive(Debug, Args)]
pub struct ExplicitArgs {
    #[arg(long, value_enum, default_value_t = ExplicitMode::Zeta)]
    pub mode: ExplicitMode,

    /// Zero file, one ordinate per line.
    #[arg(long)]
    pub zeros: Option<PathBuf>,

    /// Use only the first m zeros of the file.
    #[arg(long)]
    pub prefix: Option<usize>,

    #[arg(long = "x", default_values_t = [100.0])]
    pub xs: Vec<f64>,

    /// Truncation height; defaults to the largest ordinate (zeta) or e^{√log x}.
    #[arg(long = "T")]
    pub t: Option<f64>,

    /// Symmetric power.
    #[arg(long, default_value_t = 1)]
    pub n: u32,

    #[command(flatten)]
    pub form: FormArgs,
}
