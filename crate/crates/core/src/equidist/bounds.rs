use serde::{Deserialize, Serialize};

use crate::angles::AngleSeries;
use crate::chebyshev::cheb_u;
use crate::error::{Error, Result};
use crate::parallel::ordered_sums;
use crate::primes::prime_count;

use super::paired_angles;

/// Default value of the implied constant in the Chebyshev-sum bounds.
pub const DEFAULT_C_ET: f64 = 4.0;

/// `Σ_{p<=x, p∤q} U_m(cos θ_p)` for `m = 0..=max_m` (index `m`).
pub fn chebyshev_sums(series: &AngleSeries, x: u64, max_m: usize) -> Result<Vec<f64>> {
    let pts = series.up_to(x)?;
    Ok(ordered_sums(pts, max_m + 1, |pt, acc| {
        for (m, slot) in acc.iter_mut().enumerate() {
            *slot += cheb_u(m, pt.theta);
        }
    }))
}

/// `Σ_p U_{m1}(cos θ_p⁽¹⁾) U_{m2}(cos θ_p⁽²⁾)` over common good primes,
/// row-major with index `m1 (max_m + 1) + m2`.
pub fn chebyshev_cross_sums(s1: &AngleSeries, s2: &AngleSeries, x: u64, max_m: usize) -> Result<Vec<f64>> {
    let pairs = paired_angles(s1, s2, x)?;
    let w = max_m + 1;
    Ok(ordered_sums(&pairs, w * w, |pa, acc| {
        let u1: Vec<f64> = (0..w).map(|m| cheb_u(m, pa.theta1)).collect();
        let u2: Vec<f64> = (0..w).map(|m| cheb_u(m, pa.theta2)).collect();
        for (m1, a) in u1.iter().enumerate() {
            for (m2, b) in u2.iter().enumerate() {
                acc[m1 * w + m2] += a * b;
            }
        }
    }))
}

fn check_m(harmonics: usize, c: f64) -> Result<()> {
    if harmonics < 3 {
        return Err(Error::InvalidInput(format!("Chebyshev bound needs M >= 3, got {harmonics}")));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidInput(format!("bound constant must be positive, got {c}")));
    }
    Ok(())
}

/// `c (π(x)/M + Σ_{m=1}^{M} |Σ_{p<=x} U_m(cos θ_p)| / m)`, a candidate bound
/// on `|π_{f,I}(x) − μ_ST(I) π(x)|` uniform in `I`.
pub fn cheb_sum_bound(series: &AngleSeries, x: u64, harmonics: usize, c: f64) -> Result<f64> {
    check_m(harmonics, c)?;
    let sums = chebyshev_sums(series, x, harmonics)?;
    let tail: f64 = (1..=harmonics).map(|m| sums[m].abs() / m as f64).sum();
    Ok(c * (prime_count(x) as f64 / harmonics as f64 + tail))
}

/// `c (π(x)/M + Σ_{(m1,m2) ≠ (0,0)} |Σ_p U_{m1} U_{m2}| / ((m1+1)(m2+1)))`
/// with `0 <= m1, m2 <= M`.
pub fn cheb_sum_bound_2d(s1: &AngleSeries, s2: &AngleSeries, x: u64, harmonics: usize, c: f64) -> Result<f64> {
    check_m(harmonics, c)?;
    let w = harmonics + 1;
    let cross = chebyshev_cross_sums(s1, s2, x, harmonics)?;
    let mut tail = 0.0;
    for m1 in 0..w {
        for m2 in 0..w {
            if m1 == 0 && m2 == 0 {
                continue;
            }
            tail += cross[m1 * w + m2].abs() / ((m1 + 1) * (m2 + 1)) as f64;
        }
    }
    Ok(c * (prime_count(x) as f64 / harmonics as f64 + tail))
}

/// Shapes of the theoretical error bounds, scaled by a user constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundShape {
    /// `c π(x) log(kq log x) / √(log x)`.
    Unconditional,
    /// `c x^{3/4} log(kqx) / log x`, conditional on GRH.
    Grh,
}

pub fn theoretical_bound_curves(x: f64, k: u32, q: u64, shape: BoundShape, c: f64) -> Result<f64> {
    if !(x >= 3.0) {
        return Err(Error::InvalidInput(format!("bound shapes need x >= 3, got {x}")));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidInput(format!("bound constant must be positive, got {c}")));
    }
    let kq = k as f64 * q as f64;
    let lx = x.ln();
    Ok(match shape {
        BoundShape::Unconditional => c * prime_count(x.floor() as u64) as f64 * (kq * lx).ln() / lx.sqrt(),
        BoundShape::Grh => c * x.powf(0.75) * (kq * x).ln() / lx,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub slope: f64,
    pub intercept: f64,
}

/// Least-squares line through `(log x, log error)`; samples with a
/// non-positive or non-finite error are dropped.
pub fn fit_decay_exponent(xs: &[f64], errors: &[f64]) -> Result<DecayFit> {
    if xs.len() != errors.len() {
        return Err(Error::InvalidInput(format!("{} abscissae for {} errors", xs.len(), errors.len())));
    }
    if xs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidInput("x values must be strictly increasing".into()));
    }
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(errors)
        .filter(|(x, e)| **x > 0.0 && **e > 0.0 && e.is_finite() && x.is_finite())
        .map(|(x, e)| (x.ln(), e.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::DegenerateFit { valid: pts.len() });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Ok(DecayFit { slope, intercept: my - slope * mx })
}
