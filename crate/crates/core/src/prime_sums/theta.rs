use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::angles::{AnglePoint, AngleSeries};
use crate::chebyshev::cheb_u;
use crate::equidist::paired_angles;
use crate::error::{Error, Result};
use crate::parallel::{ordered_sum, ordered_sums};

/// Plain and log-weighted Chebyshev sums at one `(m, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChebPrimeSum {
    pub m: usize,
    pub x: u64,
    /// `Σ_{p<=x, p∤q} U_m(cos θ_p)`
    pub sum_plain: f64,
    /// `θ_{f,m}(x) = Σ_{p<=x, p∤q} U_m(cos θ_p) log p`
    pub sum_weighted: f64,
}

pub fn cheb_prime_sum(series: &AngleSeries, m: usize, x: u64) -> Result<ChebPrimeSum> {
    let pts = series.up_to(x)?;
    let s = ordered_sums(pts, 2, |pt, acc| {
        let u = cheb_u(m, pt.theta);
        acc[0] += u;
        acc[1] += u * (pt.p as f64).ln();
    });
    Ok(ChebPrimeSum { m, x, sum_plain: s[0], sum_weighted: s[1] })
}

/// `θ_{f,m}(x) = Σ_{p<=x, p∤q} U_m(cos θ_p) log p`.
pub fn theta_fm(series: &AngleSeries, m: usize, x: u64) -> Result<f64> {
    let pts = series.up_to(x)?;
    Ok(ordered_sum(pts, |pt| cheb_u(m, pt.theta) * (pt.p as f64).ln()))
}

/// `θ_{f1,f2,m1,m2}(x) = Σ_{p<=x, p∤q1q2} U_{m1}(cos θ_p⁽¹⁾) U_{m2}(cos θ_p⁽²⁾) log p`.
pub fn theta_joint(s1: &AngleSeries, s2: &AngleSeries, m1: usize, m2: usize, x: u64) -> Result<f64> {
    let pairs = paired_angles(s1, s2, x)?;
    Ok(ordered_sum(&pairs, |pa| {
        cheb_u(m1, pa.theta1) * cheb_u(m2, pa.theta2) * (pa.p as f64).ln()
    }))
}

/// Both sides of `Σ_{p<=x} c_p = Θ(x)/log x + ∫_2^x Θ(t) / (t log²t) dt`
/// where `Θ(t) = Σ_{p<=t} c_p log p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartialSummation {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// The integral is evaluated exactly from the step structure of `Θ`:
/// between consecutive primes `Θ` is constant, and
/// `∫_a^b dt/(t log²t) = 1/log a − 1/log b`.
fn partial_summation_of(x: u64, terms: &[(u64, f64)]) -> Result<PartialSummation> {
    if x < 3 {
        return Err(Error::InvalidInput(format!("partial summation needs x >= 3, got {x}")));
    }
    let log_x = (x as f64).ln();
    let lhs: f64 = terms.iter().map(|t| t.1).sum();
    let mut theta = 0.0;
    let mut integral = 0.0;
    for (idx, &(p, c)) in terms.iter().enumerate() {
        theta += c * (p as f64).ln();
        let upper = terms.get(idx + 1).map_or(log_x, |next| (next.0 as f64).ln());
        integral += theta * (1.0 / (p as f64).ln() - 1.0 / upper);
    }
    let rhs = theta / log_x + integral;
    Ok(PartialSummation { lhs, rhs, residual: (lhs - rhs).abs() })
}

pub fn partial_summation(series: &AngleSeries, m: usize, x: u64) -> Result<PartialSummation> {
    let terms: Vec<(u64, f64)> = series.up_to(x)?.iter().map(|pt| (pt.p, cheb_u(m, pt.theta))).collect();
    partial_summation_of(x, &terms)
}

pub fn joint_partial_summation(
    s1: &AngleSeries,
    s2: &AngleSeries,
    m1: usize,
    m2: usize,
    x: u64,
) -> Result<PartialSummation> {
    let terms: Vec<(u64, f64)> = paired_angles(s1, s2, x)?
        .iter()
        .map(|pa| (pa.p, cheb_u(m1, pa.theta1) * cheb_u(m2, pa.theta2)))
        .collect();
    partial_summation_of(x, &terms)
}

/// `ℓθ` folded back into `[0, π]` (same cosine).
pub(crate) fn fold_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r > PI {
        TAU - r
    } else {
        r
    }
}

/// `Λ_{Sym^m f}(p^ℓ) = U_m(cos ℓθ_p) log p` at a good prime `p`.
pub fn lambda_sym(series: &AngleSeries, m: usize, p: u64, power: u32) -> Result<f64> {
    if power == 0 {
        return Err(Error::InvalidInput("prime power exponent must be >= 1".into()));
    }
    let theta = series.angle_at(p).ok_or(Error::BadPrime { p })?;
    Ok(lambda_at(&AnglePoint { p, theta }, m, power))
}

pub(crate) fn lambda_at(pt: &AnglePoint, m: usize, power: u32) -> f64 {
    cheb_u(m, fold_angle(power as f64 * pt.theta)) * (pt.p as f64).ln()
}
