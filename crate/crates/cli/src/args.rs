use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use satotate_core::Interval;

#[derive(Parser, Debug)]
#[command(name = "satotate", version, about = "Sato-Tate angle data and equidistribution checks")]
pub struct Cli {
    /// Worker threads for the library's parallel loops (0 = rayon default).
    /// The SATOTATE_THREADS environment variable takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute angles for every good prime up to --xmax and write a cache.
    Angles(AnglesArgs),
    /// Equidistribution report for one interval at each x.
    Verify(VerifyArgs),
    /// Joint-count report for two forms.
    Joint(JointArgs),
    /// Smallest good prime whose angle lies in the interval.
    LeastPrime(LeastPrimeArgs),
    /// Chebyshev prime sums Σ U_m(cos θ_p) and Σ U_m(cos θ_p) log p.
    ChebSums(ChebSumsArgs),
    /// Smoothed prime-power sums with a compactly supported weight.
    Smooth(SmoothArgs),
    /// Fit the decay exponent of the normalized interval error.
    Fit(FitArgs),
    /// Write a cache of angles drawn independently from the Sato-Tate law.
    Simulate(SimulateArgs),
}

/// Exactly one of a curve, a coefficient file or a cache.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Weierstrass coefficients a1,a2,a3,a4,a6 (requires --conductor).
    #[arg(long, value_parser = parse_curve, allow_hyphen_values = true, requires = "conductor")]
    pub curve: Option<[i64; 5]>,
    /// Text coefficient file.
    #[arg(long)]
    pub coeffs: Option<PathBuf>,
    /// Binary angle cache written by `angles`.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct CurveExtra {
    /// Conductor of the curve given with --curve.
    #[arg(long)]
    pub conductor: Option<u64>,
    /// Label recorded in the cache for a curve source.
    #[arg(long, default_value = "curve")]
    pub label: String,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct AnglesArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub curve: CurveExtra,
    #[arg(long, value_parser = parse_u64)]
    pub xmax: u64,
    /// Cache file to write.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub curve: CurveExtra,
    #[arg(long, value_parser = parse_interval, default_value = "half")]
    pub interval: Interval,
    /// Ascending comma-separated list of x values.
    #[arg(long, value_delimiter = ',', value_parser = parse_u64, required = true)]
    pub x: Vec<u64>,
    /// Harmonics M for the Erdős-Turán and Chebyshev-sum bounds.
    #[arg(long, default_value_t = 50)]
    pub harmonics: usize,
    #[arg(long, default_value_t = satotate_core::equidist::DEFAULT_C_ET)]
    pub c_et: f64,
    /// Constant applied to the theoretical bound shapes.
    #[arg(long, default_value_t = 1.0)]
    pub c_shape: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct JointArgs {
    /// Cache of the first form.
    #[arg(long)]
    pub cache: PathBuf,
    /// Cache of the second form.
    #[arg(long)]
    pub cache2: PathBuf,
    #[arg(long, value_parser = parse_interval, default_value = "half")]
    pub interval: Interval,
    /// Interval for the second form (defaults to --interval).
    #[arg(long, value_parser = parse_interval)]
    pub interval2: Option<Interval>,
    #[arg(long, value_delimiter = ',', value_parser = parse_u64, required = true)]
    pub x: Vec<u64>,
    #[arg(long, default_value_t = 10)]
    pub harmonics: usize,
    #[arg(long, default_value_t = satotate_core::equidist::DEFAULT_C_ET)]
    pub c_et: f64,
    /// Grid resolution for the box discrepancy.
    #[arg(long, default_value_t = satotate_core::equidist::DEFAULT_GRID)]
    pub grid: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct LeastPrimeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub curve: CurveExtra,
    #[arg(long, value_parser = parse_interval)]
    pub interval: Interval,
    /// Search ceiling for curve and file sources.
    #[arg(long, value_parser = parse_u64, default_value_t = satotate_core::equidist::DEFAULT_SEARCH_CEILING)]
    pub ceiling: u64,
    /// Constant in the comparison shape c μ^{-4} (log(kq/μ))².
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ChebSumsArgs {
    #[arg(long)]
    pub cache: PathBuf,
    /// Comma-separated Chebyshev indices.
    #[arg(long, value_delimiter = ',', value_parser = parse_usize, required = true)]
    pub m: Vec<usize>,
    #[arg(long, value_delimiter = ',', value_parser = parse_u64, required = true)]
    pub x: Vec<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightPreset {
    /// Use --ell and --eps.
    Default,
    /// ℓ = 4cm, ε = 8ℓ x^{-1/(8ℓ)}; only valid for astronomically large x.
    PaperProof,
}

#[derive(Args, Debug)]
pub struct SmoothArgs {
    #[arg(long)]
    pub cache: PathBuf,
    #[arg(long, value_delimiter = ',', value_parser = parse_usize, required = true)]
    pub m: Vec<usize>,
    #[arg(long, value_delimiter = ',', value_parser = parse_u64, required = true)]
    pub x: Vec<u64>,
    #[arg(long, default_value_t = satotate_core::prime_sums::DEFAULT_ELL)]
    pub ell: u32,
    #[arg(long, default_value_t = satotate_core::prime_sums::DEFAULT_EPS)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = WeightPreset::Default)]
    pub preset: WeightPreset,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    #[arg(long)]
    pub cache: PathBuf,
    #[arg(long, value_parser = parse_interval, default_value = "middle")]
    pub interval: Interval,
    #[arg(long, value_delimiter = ',', value_parser = parse_u64, required = true)]
    pub x: Vec<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long, value_parser = parse_u64)]
    pub xmax: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "simulated")]
    pub label: String,
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_curve(s: &str) -> Result<[i64; 5], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(format!("expected five comma-separated coefficients, got {}", parts.len()));
    }
    let mut out = [0i64; 5];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|e| format!("coefficient `{p}`: {e}"))?;
    }
    Ok(out)
}

/// `alpha:beta` in radians, or one of `half`, `middle`, `full`.
pub fn parse_interval(s: &str) -> Result<Interval, String> {
    let (a, b) = match s {
        "half" => (0.0, FRAC_PI_2),
        "middle" => (FRAC_PI_4, 3.0 * FRAC_PI_4),
        "full" => (0.0, PI),
        _ => {
            let (a, b) = s.split_once(':').ok_or_else(|| format!("interval `{s}` is not alpha:beta"))?;
            let a: f64 = a.trim().parse().map_err(|e| format!("alpha `{a}`: {e}"))?;
            let b: f64 = b.trim().parse().map_err(|e| format!("beta `{b}`: {e}"))?;
            // Allow a rounded π as the right end.
            (a, if b > PI && b - PI < 1e-9 { PI } else { b })
        }
    };
    Interval::new(a, b).map_err(|e| e.to_string())
}

/// An integer, also accepting exact floating forms such as `1e6`.
fn parse_integer<T: std::str::FromStr>(v: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    let v = v.trim();
    v.parse::<T>().or_else(|e| match v.parse::<f64>() {
        Ok(f) if f.fract() == 0.0 && (0.0..1.8e19).contains(&f) => {
            (f as u64).to_string().parse::<T>().map_err(|_| format!("`{v}`: {e}"))
        }
        _ => Err(format!("`{v}`: {e}")),
    })
}

fn parse_u64(s: &str) -> Result<u64, String> {
    parse_integer(s)
}

fn parse_usize(s: &str) -> Result<usize, String> {
    parse_integer(s)
}
