//! Sato-Tate angle data for non-CM newforms and quantitative checks of
//! their effective equidistribution.
//!
//! * [`primes`]: segmented sieve and prime counts.
//! * [`curve`], [`angles`], [`coeffs`], [`cache`]: traces of Frobenius by
//!   point counting or from coefficient files, normalized to angles
//!   `θ_p ∈ [0, π]`, with a binary cache format.
//! * [`measure`], [`chebyshev`], [`quadrature`]: the Sato-Tate measure and
//!   the Chebyshev polynomials `U_m` that are orthonormal for it.
//! * [`equidist`]: interval and joint counts, exact discrepancies,
//!   Erdős-Turán and Chebyshev-sum bounds, least primes, decay fits.
//! * [`prime_sums`]: `θ_{f,m}(x)`, joint sums, partial summation,
//!   symmetric-power `Λ` values and smoothed prime-power sums.
//!
//! The real-analysis modules are generic over [`Real`] (`f32`/`f64`); the
//! aliases at the crate root fix the scalar to `f64`, which is what the
//! angle data and reports use.

pub mod angles;
pub mod cache;
pub mod chebyshev;
pub mod coeffs;
pub mod curve;
pub mod equidist;
pub mod error;
pub mod measure;
pub mod modp;
pub mod parallel;
pub mod prime_sums;
pub mod primes;
pub mod quadrature;
pub mod scalar;

pub use angles::{
    angle_from_ap, build_angle_series, cm_heuristic, AnglePoint, AngleSeries, AngleSource, CmHeuristic,
    CmVerdict, FormMeta, SourceKind,
};
pub use cache::{load_cache, save_cache};
pub use coeffs::CoefficientFile;
pub use curve::CurveSpec;
pub use error::{Error, Result};
pub use scalar::Real;

/// Closed subinterval of `[0, π]` in double precision.
pub type Interval = measure::Interval<f64>;
pub type IntervalF32 = measure::Interval<f32>;

/// Smoothing weight in double precision.
pub type SmoothingWeight = prime_sums::SmoothingWeight<f64>;
pub type SmoothingWeightF32 = prime_sums::SmoothingWeight<f32>;

pub type GaussLegendre = quadrature::GaussLegendre<f64>;
