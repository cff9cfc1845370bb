use serde::{Deserialize, Serialize};

use crate::angles::{AngleSeries, AngleSource};
use crate::error::{Error, Result};
use crate::measure::Interval;
use crate::primes::PrimeRange;

pub const DEFAULT_SEARCH_CEILING: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeastPrime {
    pub p: u64,
    pub theta: f64,
    /// `⌈c μ^{-4} (log(kq/μ))²⌉`, the GRH-conditional shape for comparison.
    pub grh_shape: f64,
}

/// `⌈c μ^{-4} (log(kq/μ))²⌉`.
pub fn grh_least_prime_shape(mu: f64, k: u32, q: u64, c: f64) -> f64 {
    let l = (k as f64 * q as f64 / mu).ln();
    (c * l * l / mu.powi(4)).ceil()
}

fn check_mass(interval: &Interval<f64>) -> Result<f64> {
    let mu = interval.mass();
    if !(mu > 0.0) {
        return Err(Error::InvalidInput("least-prime search needs an interval of positive mass".into()));
    }
    Ok(mu)
}

/// Smallest good prime with `θ_p ∈ I`, computing angles on demand in
/// prime order up to `ceiling`.
pub fn least_prime_in_interval(
    source: &AngleSource,
    interval: &Interval<f64>,
    ceiling: u64,
    c: f64,
) -> Result<LeastPrime> {
    let mu = check_mass(interval)?;
    let grh_shape = grh_least_prime_shape(mu, source.weight(), source.level(), c);
    let level = source.level();
    if ceiling >= 2 {
        for p in PrimeRange::new(2, ceiling)?.iter().filter(|p| !level.is_multiple_of(*p)) {
            let theta = source.angle(p)?;
            if interval.contains(theta) {
                return Ok(LeastPrime { p, theta, grh_shape });
            }
        }
    }
    Err(Error::SearchExceeded { ceiling })
}

/// Same search over a prebuilt series; the ceiling is its coverage.
pub fn least_prime_in_series(series: &AngleSeries, interval: &Interval<f64>, c: f64) -> Result<LeastPrime> {
    let mu = check_mass(interval)?;
    let grh_shape = grh_least_prime_shape(mu, series.weight(), series.level(), c);
    series
        .points
        .iter()
        .find(|pt| interval.contains(pt.theta))
        .map(|pt| LeastPrime { p: pt.p, theta: pt.theta, grh_shape })
        .ok_or(Error::SearchExceeded { ceiling: series.x_max })
}
