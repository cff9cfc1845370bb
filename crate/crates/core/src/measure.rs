//! The Sato-Tate measure `dμ = (2/π) sin²θ dθ` on `[0, π]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Closed interval `[alpha, beta] ⊆ [0, π]`, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval<T> {
    alpha: T,
    beta: T,
}

impl<T: Real> Interval<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        if !(alpha >= T::zero() && alpha <= beta && beta <= T::PI()) {
            return Err(Error::InvalidInput(format!(
                "interval [{alpha:?}, {beta:?}] is not a closed subinterval of [0, π]"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// `[0, π]`.
    pub fn full() -> Self {
        Self { alpha: T::zero(), beta: T::PI() }
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// Closed membership: both endpoints count as inside.
    #[inline]
    pub fn contains(&self, theta: T) -> bool {
        self.alpha <= theta && theta <= self.beta
    }

    pub fn mass(&self) -> T {
        mu_st(self)
    }
}

/// `μ_ST([α, β]) = ((β − α) − (sin 2β − sin 2α)/2) / π`.
pub fn mu_st<T: Real>(interval: &Interval<T>) -> T {
    let two = T::lit(2.0);
    let (a, b) = (interval.alpha, interval.beta);
    let v = ((b - a) - ((two * b).sin() - (two * a).sin()) / two) / T::PI();
    v.max(T::zero()).min(T::one())
}

/// Sato-Tate distribution function `F(θ) = μ_ST([0, θ])`.
pub fn st_cdf<T: Real>(theta: T) -> T {
    let theta = theta.max(T::zero()).min(T::PI());
    let two = T::lit(2.0);
    ((theta - (two * theta).sin() / two) / T::PI()).max(T::zero()).min(T::one())
}

/// Sato-Tate density `(2/π) sin²θ`.
pub fn st_density<T: Real>(theta: T) -> T {
    let s = theta.sin();
    T::lit(2.0) * s * s / T::PI()
}

/// Inverse of [`st_cdf`] by Newton's method safeguarded with bisection.
pub fn st_quantile<T: Real>(u: T) -> T {
    if !(u > T::zero()) {
        return T::zero();
    }
    if !(u < T::one()) {
        return T::PI();
    }
    let (mut lo, mut hi) = (T::zero(), T::PI());
    // F(θ) ≈ u·π maps the midpoint correctly and keeps the start bracketed.
    let mut theta = u * T::PI();
    let tol = T::epsilon() * T::lit(4.0);
    for _ in 0..200 {
        let g = st_cdf(theta) - u;
        if g == T::zero() {
            return theta;
        }
        if g > T::zero() {
            hi = theta;
        } else {
            lo = theta;
        }
        let d = st_density(theta);
        if d > T::zero() {
            let step = g / d;
            if step.abs() <= tol * theta.max(T::epsilon()) {
                return theta - step;
            }
            let newton = theta - step;
            if newton > lo && newton < hi {
                theta = newton;
                continue;
            }
        }
        theta = (lo + hi) / T::lit(2.0);
        if hi - lo <= tol * T::PI() {
            break;
        }
    }
    theta
}
