use std::f64::consts::TAU;

use crate::angles::AngleSeries;
use crate::error::{Error, Result};
use crate::measure::st_cdf;
use crate::parallel::ordered_sums;

use super::paired_angles;

/// Default grid resolution for the two-dimensional box discrepancy.
pub const DEFAULT_GRID: usize = 64;

/// `sup_{[a,b] ⊆ [0,1]} |#{u_i ∈ [a,b]}/n − (b − a)|` over closed intervals.
///
/// Sorts `us` in place. With distinct values `v_1 < … < v_K` and cumulative
/// counts `c_k = #{u ≤ v_k}`, over-counts are attained on `[v_i, v_j]` and
/// under-counts as limits of intervals inside `(v_i, v_j)` (with `0` and `1`
/// as extra endpoints), so two linear sweeps give the exact value.
pub fn interval_discrepancy(us: &mut [f64]) -> f64 {
    if us.is_empty() {
        return 0.0;
    }
    us.sort_by(f64::total_cmp);
    let n = us.len() as f64;
    // (value, cumulative count)
    let mut distinct: Vec<(f64, f64)> = Vec::with_capacity(us.len());
    for (idx, &u) in us.iter().enumerate() {
        let c = (idx + 1) as f64;
        match distinct.last_mut() {
            Some(last) if last.0 == u => last.1 = c,
            _ => distinct.push((u, c)),
        }
    }

    // Over-count: (c_j/n − v_j) + max_{i<=j} (v_i − c_{i−1}/n).
    let mut over = f64::NEG_INFINITY;
    let mut best_left = f64::NEG_INFINITY;
    let mut prev_c = 0.0;
    for &(v, c) in &distinct {
        best_left = best_left.max(v - prev_c / n);
        over = over.max(c / n - v + best_left);
        prev_c = c;
    }

    // Under-count: (v_j − c_{j−1}/n) + max_{0<=i<j} (c_i/n − v_i), with the
    // virtual endpoints (v_0, c_0) = (0, 0) and v_{K+1} = 1.
    let mut under: f64 = 0.0;
    let mut best_right = 0.0f64;
    let mut prev_c = 0.0;
    for &(v, c) in &distinct {
        under = under.max(v - prev_c / n + best_right);
        best_right = best_right.max(c / n - v);
        prev_c = c;
    }
    under = under.max(1.0 - prev_c / n + best_right);

    over.max(under).clamp(0.0, 1.0)
}

fn transformed(series: &AngleSeries, x: u64) -> Result<Vec<f64>> {
    Ok(series.up_to(x)?.iter().map(|pt| st_cdf(pt.theta)).collect())
}

/// Exact interval discrepancy of `{θ_p : p <= x}` against `μ_ST`, computed
/// on `u_p = F_ST(θ_p)`. Zero for an empty series.
pub fn exact_discrepancy_1d(series: &AngleSeries, x: u64) -> Result<f64> {
    let mut us = transformed(series, x)?;
    Ok(interval_discrepancy(&mut us))
}

/// `|Σ_i e^{2πi m u_i}|` for `m = 1..=harmonics`, index `m − 1`.
fn exponential_sums(us: &[f64], harmonics: usize) -> Vec<f64> {
    let sums = ordered_sums(us, 2 * harmonics, |&u, acc| {
        for m in 1..=harmonics {
            let phase = (m as f64 * u).fract() * TAU;
            let (s, c) = phase.sin_cos();
            acc[2 * (m - 1)] += c;
            acc[2 * (m - 1) + 1] += s;
        }
    });
    sums.chunks_exact(2).map(|re_im| re_im[0].hypot(re_im[1])).collect()
}

/// Erdős-Turán bounds for every `M` in `1..=max_harmonic`, index `M − 1`.
///
/// `D ≤ 1/(M+1) + (3/n) Σ_{m=1}^{M} |Σ_i e(m u_i)| / m`.
pub fn erdos_turan_profile(us: &[f64], max_harmonic: usize) -> Result<Vec<f64>> {
    if us.is_empty() {
        return Err(Error::InvalidInput("Erdős-Turán bound needs at least one point".into()));
    }
    if max_harmonic == 0 {
        return Err(Error::InvalidInput("Erdős-Turán bound needs M >= 1".into()));
    }
    let n = us.len() as f64;
    let sums = exponential_sums(us, max_harmonic);
    let mut tail = 0.0;
    Ok(sums
        .iter()
        .enumerate()
        .map(|(idx, s)| {
            let m = (idx + 1) as f64;
            tail += s / m;
            1.0 / (m + 1.0) + 3.0 * tail / n
        })
        .collect())
}

/// Erdős-Turán bound for points `u_i ∈ [0,1]` with `M` harmonics.
pub fn erdos_turan_uniform(us: &[f64], harmonics: usize) -> Result<f64> {
    Ok(*erdos_turan_profile(us, harmonics)?.last().expect("M >= 1"))
}

/// Erdős-Turán bound on [`exact_discrepancy_1d`] for the series up to `x`.
pub fn erdos_turan_bound(series: &AngleSeries, x: u64, harmonics: usize) -> Result<f64> {
    erdos_turan_uniform(&transformed(series, x)?, harmonics)
}

/// Box discrepancy of points in `[0,1]²` against the product measure,
/// restricted to closed boxes with corners on the `grid × grid` lattice.
///
/// The supremum over all boxes exceeds this value by at most `4/grid`.
pub fn joint_box_discrepancy_uniform(points: &[(f64, f64)], grid: usize) -> Result<f64> {
    if grid < 2 {
        return Err(Error::InvalidInput(format!("grid resolution must be >= 2, got {grid}")));
    }
    if points.is_empty() {
        return Ok(0.0);
    }
    let g = grid;
    let gf = g as f64;
    let stride = g + 2;
    // Four cumulative tables: counts of points with u (≤ | <) a/G and
    // v (≤ | <) c/G, indexed by a, c in 0..=G.
    // For a coordinate u, "≤ a/G" holds from a = ceil(uG), "< a/G" from floor(uG)+1.
    let le = |u: f64| ((u * gf).ceil().max(0.0) as usize).min(g + 1);
    let lt = |u: f64| (((u * gf).floor() + 1.0).max(0.0) as usize).min(g + 1);
    let mut tables = vec![vec![0u32; stride * stride]; 4];
    for &(u, v) in points {
        let (ule, ult, vle, vlt) = (le(u), lt(u), le(v), lt(v));
        tables[0][ule * stride + vle] += 1;
        tables[1][ult * stride + vle] += 1;
        tables[2][ule * stride + vlt] += 1;
        tables[3][ult * stride + vlt] += 1;
    }
    for t in &mut tables {
        for a in 0..stride {
            for c in 0..stride {
                let mut v = t[a * stride + c];
                if a > 0 {
                    v += t[(a - 1) * stride + c];
                }
                if c > 0 {
                    v += t[a * stride + c - 1];
                }
                if a > 0 && c > 0 {
                    v -= t[(a - 1) * stride + c - 1];
                }
                t[a * stride + c] = v;
            }
        }
    }
    let n = points.len() as f64;
    let at = |t: usize, a: usize, c: usize| tables[t][a * stride + c] as i64;
    let mut worst: f64 = 0.0;
    for a in 0..=g {
        for b in a..=g {
            let width = (b - a) as f64 / gf;
            for c in 0..=g {
                for d in c..=g {
                    // #{a/G ≤ u ≤ b/G, c/G ≤ v ≤ d/G}
                    let inside = at(0, b, d) - at(1, a, d) - at(2, b, c) + at(3, a, c);
                    let mass = width * (d - c) as f64 / gf;
                    worst = worst.max((inside as f64 / n - mass).abs());
                }
            }
        }
    }
    Ok(worst.min(1.0))
}

/// Grid box discrepancy of `(F_ST(θ_p⁽¹⁾), F_ST(θ_p⁽²⁾))` over common good
/// primes `p <= x`.
pub fn joint_box_discrepancy(s1: &AngleSeries, s2: &AngleSeries, x: u64, grid: usize) -> Result<f64> {
    let pts: Vec<(f64, f64)> = paired_angles(s1, s2, x)?
        .iter()
        .map(|pa| (st_cdf(pa.theta1), st_cdf(pa.theta2)))
        .collect();
    joint_box_discrepancy_uniform(&pts, grid)
}
