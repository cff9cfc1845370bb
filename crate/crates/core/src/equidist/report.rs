use serde::{Deserialize, Serialize};

use crate::angles::AngleSeries;
use crate::error::Result;
use crate::measure::Interval;
use crate::primes::prime_count;

use super::bounds::{cheb_sum_bound, cheb_sum_bound_2d, theoretical_bound_curves, BoundShape, DEFAULT_C_ET};
use super::discrepancy::{erdos_turan_bound, exact_discrepancy_1d, joint_box_discrepancy, DEFAULT_GRID};
use super::{count_in_interval, joint_count};

/// Tunables shared by the single and joint reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportConfig {
    /// Harmonics for the Erdős-Turán and Chebyshev-sum bounds.
    pub harmonics: usize,
    pub c_et: f64,
    /// Constant applied to the theoretical shapes.
    pub c_shape: f64,
    pub grid: usize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self { harmonics: 50, c_et: DEFAULT_C_ET, c_shape: 1.0, grid: DEFAULT_GRID }
    }
}

/// One row of the single-form equidistribution report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub x: u64,
    pub pi_x: u64,
    pub count: u64,
    /// `μ_ST(I) π(x)`
    pub expected: f64,
    pub error_abs: f64,
    pub exact_sup_discrepancy: f64,
    pub et_bound: f64,
    pub cheb_bound: f64,
    pub cheb_dominates: bool,
    pub unconditional_shape: f64,
    pub grh_shape: f64,
}

pub fn discrepancy_report(
    series: &AngleSeries,
    interval: &Interval<f64>,
    x: u64,
    cfg: &ReportConfig,
) -> Result<DiscrepancyReport> {
    let pi_x = prime_count(x);
    let count = count_in_interval(series, interval, x)?;
    let expected = interval.mass() * pi_x as f64;
    let error_abs = (count as f64 - expected).abs();
    let exact = exact_discrepancy_1d(series, x)?;
    let n = series.up_to(x)?.len();
    let et_bound = if n == 0 { 0.0 } else { erdos_turan_bound(series, x, cfg.harmonics)? };
    let cheb_bound = cheb_sum_bound(series, x, cfg.harmonics, cfg.c_et)?;
    let (k, q) = (series.weight(), series.level());
    let xf = x as f64;
    let shape = |s| if xf >= 3.0 { theoretical_bound_curves(xf, k, q, s, cfg.c_shape) } else { Ok(f64::NAN) };
    Ok(DiscrepancyReport {
        x,
        pi_x,
        count,
        expected,
        error_abs,
        exact_sup_discrepancy: exact,
        et_bound,
        cheb_bound,
        cheb_dominates: cheb_bound >= error_abs,
        unconditional_shape: shape(BoundShape::Unconditional)?,
        grh_shape: shape(BoundShape::Grh)?,
    })
}

/// One row of the joint (two-form) report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointReport {
    pub x: u64,
    pub pi_x: u64,
    pub joint_count: u64,
    /// `μ_ST(I1) μ_ST(I2) π(x)`
    pub expected: f64,
    pub error_abs: f64,
    pub box_discrepancy_grid: f64,
    pub cheb2_bound: f64,
    pub cheb2_dominates: bool,
}

pub fn joint_report(
    s1: &AngleSeries,
    s2: &AngleSeries,
    i1: &Interval<f64>,
    i2: &Interval<f64>,
    x: u64,
    cfg: &ReportConfig,
) -> Result<JointReport> {
    let pi_x = prime_count(x);
    let joint = joint_count(s1, s2, i1, i2, x)?;
    let expected = i1.mass() * i2.mass() * pi_x as f64;
    let error_abs = (joint as f64 - expected).abs();
    let cheb2_bound = cheb_sum_bound_2d(s1, s2, x, cfg.harmonics, cfg.c_et)?;
    Ok(JointReport {
        x,
        pi_x,
        joint_count: joint,
        expected,
        error_abs,
        box_discrepancy_grid: joint_box_discrepancy(s1, s2, x, cfg.grid)?,
        cheb2_bound,
        cheb2_dominates: cheb2_bound >= error_abs,
    })
}
