use crate::angles::AngleSeries;
use crate::error::{Error, Result};
use crate::parallel::ordered_sum;

use super::theta::lambda_at;
use super::SmoothingWeight;

/// Largest prime power the weight reaches: `x^{1 + ε/log x} = x e^ε`.
pub fn smoothed_psi_coverage(w: &SmoothingWeight<f64>) -> u64 {
    (w.x() * w.eps().exp()).floor() as u64
}

/// `ψ(x, φ) = Σ_{p ∤ q} Σ_{ℓ >= 1} φ(ℓ log p / log x) U_m(cos ℓθ_p) log p`
/// over good prime powers `p^ℓ <= x e^ε`.
pub fn smoothed_psi(series: &AngleSeries, m: usize, w: &SmoothingWeight<f64>) -> Result<f64> {
    let reach = smoothed_psi_coverage(w);
    if reach > series.x_max {
        return Err(Error::RangeExceeded { x: reach, x_max: series.x_max });
    }
    let log_x = w.x().ln();
    let lo = w.support().0;
    let pts = series.up_to(reach)?;
    Ok(ordered_sum(pts, |pt| {
        let log_p = (pt.p as f64).ln();
        let mut total = 0.0;
        let mut power = 1u32;
        let mut pk = pt.p as u128;
        while pk <= reach as u128 {
            let t = power as f64 * log_p / log_x;
            if t > lo {
                let phi = w.phi(t);
                if phi > 0.0 {
                    total += phi * lambda_at(pt, m, power);
                }
            }
            power += 1;
            pk *= pt.p as u128;
        }
        total
    }))
}
