//! Empirical Sato-Tate counts, exact discrepancies and the bounds that
//! control them.

mod bounds;
mod discrepancy;
mod least_prime;
mod report;

pub use bounds::{
    cheb_sum_bound, cheb_sum_bound_2d, chebyshev_cross_sums, chebyshev_sums, fit_decay_exponent,
    theoretical_bound_curves, BoundShape, DecayFit, DEFAULT_C_ET,
};
pub use discrepancy::{
    erdos_turan_bound, erdos_turan_profile, erdos_turan_uniform, exact_discrepancy_1d,
    interval_discrepancy, joint_box_discrepancy, joint_box_discrepancy_uniform, DEFAULT_GRID,
};
pub use least_prime::{
    grh_least_prime_shape, least_prime_in_interval, least_prime_in_series, LeastPrime,
    DEFAULT_SEARCH_CEILING,
};
pub use report::{discrepancy_report, joint_report, DiscrepancyReport, JointReport, ReportConfig};

use crate::angles::{AnglePoint, AngleSeries};
use crate::error::Result;
use crate::measure::Interval;

/// `#{p <= x : p ∤ q, θ_p ∈ I}` with `I` closed.
pub fn count_in_interval(series: &AngleSeries, interval: &Interval<f64>, x: u64) -> Result<u64> {
    Ok(series
        .up_to(x)?
        .iter()
        .filter(|pt| interval.contains(pt.theta))
        .count() as u64)
}

/// A prime good for both forms with its two angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairedAngle {
    pub p: u64,
    pub theta1: f64,
    pub theta2: f64,
}

/// Merge of two series on their common (good-for-both) primes `<= x`.
pub fn paired_angles(s1: &AngleSeries, s2: &AngleSeries, x: u64) -> Result<Vec<PairedAngle>> {
    let a = s1.up_to(x)?;
    let b = s2.up_to(x)?;
    Ok(merge(a, b))
}

fn merge(a: &[AnglePoint], b: &[AnglePoint]) -> Vec<PairedAngle> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].p.cmp(&b[j].p) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(PairedAngle { p: a[i].p, theta1: a[i].theta, theta2: b[j].theta });
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `Σ_{p <= x, p ∤ q1 q2} 1_{I1}(θ_p⁽¹⁾) 1_{I2}(θ_p⁽²⁾)`.
pub fn joint_count(
    s1: &AngleSeries,
    s2: &AngleSeries,
    i1: &Interval<f64>,
    i2: &Interval<f64>,
    x: u64,
) -> Result<u64> {
    Ok(paired_angles(s1, s2, x)?
        .iter()
        .filter(|pa| i1.contains(pa.theta1) && i2.contains(pa.theta2))
        .count() as u64)
}
