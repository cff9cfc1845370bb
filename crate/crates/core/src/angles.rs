//! Sato-Tate angles `θ_p ∈ [0, π]` with `a_f(p) = 2 cos θ_p`, collected
//! into an [`AngleSeries`] over the good primes up to `x_max`.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::{Coefficient, CoefficientFile};
use crate::curve::{self, CurveSpec};
use crate::error::{Error, Result};
use crate::primes::primes_up_to;

/// Slack allowed on the Deligne bound for rounding in supplied data.
pub const DELIGNE_SLACK: f64 = 1e-12;

/// Zero-fraction threshold above which a series looks CM.
pub const CM_THRESHOLD: f64 = 0.3;

const BUILD_CHUNK: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Curve,
    File,
    Cache,
    /// Independent draws from the Sato-Tate law, for null comparisons.
    Simulated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormMeta {
    pub label: String,
    pub weight_k: u32,
    pub level_q: u64,
    pub source: SourceKind,
    /// The form is taken to be non-CM on the caller's word.
    pub cm_asserted_false: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnglePoint {
    pub p: u64,
    pub theta: f64,
}

/// Angles at every good prime `p <= x_max`, strictly increasing in `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleSeries {
    pub meta: FormMeta,
    pub x_max: u64,
    pub points: Vec<AnglePoint>,
}

impl AngleSeries {
    /// Checks the structural invariants and wraps the points.
    pub fn new(meta: FormMeta, x_max: u64, points: Vec<AnglePoint>) -> Result<Self> {
        for w in points.windows(2) {
            if w[0].p >= w[1].p {
                return Err(Error::InvalidInput(format!("primes not increasing at {}", w[1].p)));
            }
        }
        for pt in &points {
            if !(0.0..=std::f64::consts::PI).contains(&pt.theta) {
                return Err(Error::InvalidInput(format!("angle {} at p = {} outside [0, π]", pt.theta, pt.p)));
            }
            if pt.p > x_max {
                return Err(Error::InvalidInput(format!("p = {} beyond x_max = {x_max}", pt.p)));
            }
            if meta.level_q.is_multiple_of(pt.p) {
                return Err(Error::InvalidInput(format!("p = {} divides the level", pt.p)));
            }
        }
        Ok(Self { meta, x_max, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn level(&self) -> u64 {
        self.meta.level_q
    }

    pub fn weight(&self) -> u32 {
        self.meta.weight_k
    }

    /// Points with `p <= x`; fails if `x` exceeds the coverage.
    pub fn up_to(&self, x: u64) -> Result<&[AnglePoint]> {
        if x > self.x_max {
            return Err(Error::RangeExceeded { x, x_max: self.x_max });
        }
        let end = self.points.partition_point(|pt| pt.p <= x);
        Ok(&self.points[..end])
    }

    pub fn angle_at(&self, p: u64) -> Option<f64> {
        self.points
            .binary_search_by_key(&p, |pt| pt.p)
            .ok()
            .map(|i| self.points[i].theta)
    }
}

/// Deligne bound `2 p^{(k-1)/2}`.
pub fn deligne_bound(p: u64, k: u32) -> f64 {
    2.0 * (p as f64).powf((k as f64 - 1.0) / 2.0)
}

/// `θ = arccos(a_p / (2 p^{(k-1)/2}))` for a raw (unnormalized) eigenvalue.
pub fn angle_from_ap(ap: f64, p: u64, k: u32) -> Result<f64> {
    let bound = deligne_bound(p, k);
    if !(ap.abs() <= bound * (1.0 + DELIGNE_SLACK)) {
        return Err(Error::DeligneViolation { p, ap, bound });
    }
    Ok((ap / bound).clamp(-1.0, 1.0).acos())
}

/// `θ = arccos(a / 2)` for a normalized eigenvalue `a = 2 cos θ`.
pub fn angle_from_normalized(a: f64, p: u64) -> Result<f64> {
    if !(a.abs() <= 2.0 * (1.0 + DELIGNE_SLACK)) {
        return Err(Error::DeligneViolation { p, ap: a, bound: 2.0 });
    }
    Ok((a / 2.0).clamp(-1.0, 1.0).acos())
}

/// Where angles come from.
#[derive(Debug, Clone)]
pub enum AngleSource {
    Curve(CurveSpec),
    Coefficients(CoefficientFile),
}

impl AngleSource {
    pub fn level(&self) -> u64 {
        match self {
            AngleSource::Curve(c) => c.conductor,
            AngleSource::Coefficients(f) => f.level,
        }
    }

    pub fn weight(&self) -> u32 {
        match self {
            AngleSource::Curve(_) => 2,
            AngleSource::Coefficients(f) => f.weight,
        }
    }

    pub fn meta(&self) -> FormMeta {
        match self {
            AngleSource::Curve(c) => FormMeta {
                label: c.label.clone(),
                weight_k: 2,
                level_q: c.conductor,
                source: SourceKind::Curve,
                cm_asserted_false: true,
            },
            AngleSource::Coefficients(f) => FormMeta {
                label: f.label.clone(),
                weight_k: f.weight,
                level_q: f.level,
                source: SourceKind::File,
                cm_asserted_false: true,
            },
        }
    }

    /// `θ_p` at a good prime.
    pub fn angle(&self, p: u64) -> Result<f64> {
        match self {
            AngleSource::Curve(c) => angle_from_ap(curve::ap(c, p)? as f64, p, 2),
            AngleSource::Coefficients(f) => match f.get(p) {
                None => Err(Error::MissingPrime { p }),
                Some(Coefficient::Integer(a)) => angle_from_ap(a as f64, p, f.weight),
                Some(Coefficient::Normalized(a)) => angle_from_normalized(a, p),
            },
        }
    }
}

/// Angles at all good primes `p <= x_max`. Computed in parallel over fixed
/// chunks of primes; the result does not depend on the thread count.
pub fn build_angle_series(source: &AngleSource, x_max: u64) -> Result<AngleSeries> {
    if x_max < 2 {
        return Err(Error::InvalidInput(format!("x_max must be >= 2, got {x_max}")));
    }
    let level = source.level();
    let good: Vec<u64> = primes_up_to(x_max).into_iter().filter(|p| !level.is_multiple_of(*p)).collect();
    let chunks: Vec<Vec<Result<AnglePoint>>> = good
        .par_chunks(BUILD_CHUNK)
        .map(|chunk| {
            chunk
                .iter()
                .map(|&p| source.angle(p).map(|theta| AnglePoint { p, theta }))
                .collect()
        })
        .collect();
    let mut points = Vec::with_capacity(good.len());
    for r in chunks.into_iter().flatten() {
        points.push(r?);
    }
    Ok(AngleSeries { meta: source.meta(), x_max, points })
}

/// Fraction of points with `a_p = 0` and the resulting advisory verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmHeuristic {
    pub zero_fraction: f64,
    pub verdict: CmVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CmVerdict {
    PlausiblyNonCm,
    SuspectCm,
}

pub fn cm_heuristic(series: &AngleSeries) -> Result<CmHeuristic> {
    if series.is_empty() {
        return Err(Error::InvalidInput("cm heuristic needs a nonempty series".into()));
    }
    // arccos(0) is exactly FRAC_PI_2 in IEEE arithmetic.
    let zeros = series.points.iter().filter(|pt| pt.theta == FRAC_PI_2).count();
    let zero_fraction = zeros as f64 / series.len() as f64;
    let verdict = if zero_fraction > CM_THRESHOLD { CmVerdict::SuspectCm } else { CmVerdict::PlausiblyNonCm };
    Ok(CmHeuristic { zero_fraction, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::catalog;
    use std::f64::consts::PI;

    #[test]
    fn angle_landmarks() {
        assert_eq!(angle_from_ap(0.0, 7, 2).unwrap(), FRAC_PI_2);
        let t = angle_from_ap(-2.0, 2, 2).unwrap();
        assert!((t - 3.0 * PI / 4.0).abs() < 1e-12);
        assert_eq!(angle_from_ap(2.0 * 5f64.sqrt(), 5, 2).unwrap(), 0.0);
        assert!(matches!(angle_from_ap(5.0, 5, 2), Err(Error::DeligneViolation { .. })));
        assert!(angle_from_normalized(2.0 + 1e-13, 3).is_ok());
        assert!(angle_from_normalized(2.01, 3).is_err());
    }

    #[test]
    fn small_series_11a1() {
        let s = build_angle_series(&AngleSource::Curve(catalog::c11a1()), 10).unwrap();
        let ps: Vec<u64> = s.points.iter().map(|pt| pt.p).collect();
        assert_eq!(ps, [2, 3, 5, 7]);
        assert!(build_angle_series(&AngleSource::Curve(catalog::c11a1()), 1).is_err());
    }

    #[test]
    fn even_conductor_at_two_is_empty() {
        let s = build_angle_series(&AngleSource::Curve(catalog::c32a()), 2).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn missing_prime_in_file() {
        let f = CoefficientFile::parse(
            "# satotate-coeffs v1\nweight=2\nlevel=11\nnormalized=false\n2 -2\n5 1\n7 -2\n",
        )
        .unwrap();
        let err = build_angle_series(&AngleSource::Coefficients(f), 10).unwrap_err();
        assert!(matches!(err, Error::MissingPrime { p: 3 }));
    }

    #[test]
    fn corrupt_file_violates_deligne() {
        let f = CoefficientFile::parse(
            "# satotate-coeffs v1\nweight=2\nlevel=11\nnormalized=false\n2 3\n3 -1\n",
        )
        .unwrap();
        let err = build_angle_series(&AngleSource::Coefficients(f), 3).unwrap_err();
        assert!(matches!(err, Error::DeligneViolation { p: 2, .. }));
    }

    #[test]
    fn cm_single_zero() {
        let meta = AngleSource::Curve(catalog::c11a1()).meta();
        let s = AngleSeries::new(meta, 3, vec![AnglePoint { p: 3, theta: FRAC_PI_2 }]).unwrap();
        let h = cm_heuristic(&s).unwrap();
        assert_eq!(h.zero_fraction, 1.0);
        assert_eq!(h.verdict, CmVerdict::SuspectCm);
    }

    #[test]
    fn series_invariants_enforced() {
        let meta = AngleSource::Curve(catalog::c11a1()).meta();
        let pts = vec![AnglePoint { p: 3, theta: 1.0 }, AnglePoint { p: 2, theta: 1.0 }];
        assert!(AngleSeries::new(meta.clone(), 10, pts).is_err());
        assert!(AngleSeries::new(meta.clone(), 20, vec![AnglePoint { p: 11, theta: 1.0 }]).is_err());
        assert!(AngleSeries::new(meta, 20, vec![AnglePoint { p: 2, theta: 4.0 }]).is_err());
    }
}
