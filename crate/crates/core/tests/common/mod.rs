//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satotate_core::{AnglePoint, AngleSeries, FormMeta, SourceKind};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `∫_α^β (2/π) sin²θ dθ` by adaptive quadrature.
pub fn st_mass_quadrature(alpha: f64, beta: f64) -> f64 {
    let density = |t: f64| 2.0 / PI * t.sin().powi(2);
    adaptive_simpson(&density, alpha, beta, 1e-15)
}

/// `sup_I |#{u ∈ I}/n − |I||` over all subintervals of `[0,1]` by scanning
/// every pair of candidate endpoints: closed intervals for over-counts,
/// open ones for under-counts.
pub fn discrepancy_brute_force(us: &[f64]) -> f64 {
    if us.is_empty() {
        return 0.0;
    }
    let n = us.len() as f64;
    let mut ends: Vec<f64> = us.to_vec();
    ends.push(0.0);
    ends.push(1.0);
    let mut best: f64 = 0.0;
    for &a in &ends {
        for &b in &ends {
            if b < a {
                continue;
            }
            let closed = us.iter().filter(|&&u| a <= u && u <= b).count() as f64;
            let open = us.iter().filter(|&&u| a < u && u < b).count() as f64;
            best = best.max(closed / n - (b - a));
            best = best.max((b - a) - open / n);
        }
    }
    best
}

pub fn toy_series(label: &str, level: u64, points: Vec<(u64, f64)>, x_max: u64) -> AngleSeries {
    let meta = FormMeta {
        label: label.into(),
        weight_k: 2,
        level_q: level,
        source: SourceKind::File,
        cm_asserted_false: true,
    };
    AngleSeries::new(meta, x_max, points.into_iter().map(|(p, theta)| AnglePoint { p, theta }).collect()).unwrap()
}

/// Angles drawn from `μ_ST` by rejection sampling at every prime `<= x_max`.
pub fn random_st_series(seed: u64, x_max: u64) -> AngleSeries {
    let mut r = rng(seed);
    let pts = satotate_core::primes::primes_up_to(x_max)
        .into_iter()
        .map(|p| {
            let theta = loop {
                let t: f64 = r.gen_range(0.0..PI);
                if r.gen::<f64>() <= t.sin().powi(2) {
                    break t;
                }
            };
            (p, theta)
        })
        .collect();
    toy_series("random", 1, pts, x_max)
}
