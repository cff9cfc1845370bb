//! Compactly supported smoothing weight `φ(t; x, ℓ, ε)` and its Laplace
//! transform.
//!
//! With `A = ε / (2ℓ log x)`, `φ` is the indicator of `[1/2, 1 + 2ℓA]`
//! convolved with `ℓ` uniform densities on `[−2A, 0]`. Hence
//! `φ ≡ 1` on `[1/2, 1]`, `supp φ = [1/2 − ε/log x, 1 + ε/log x]`, each edge
//! is a degree-`ℓ` piecewise polynomial (an Irwin-Hall distribution
//! function), and
//!
//! ```text
//! Φ(z) = e^{−(1+2ℓA)z} · (1 − e^{(1/2+2ℓA)z}) / (−z) · ((1 − e^{2Az}) / (−2Az))^ℓ.
//! ```

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::scalar::Real;

pub const DEFAULT_ELL: u32 = 4;
pub const DEFAULT_EPS: f64 = 0.1;

/// Below this modulus `(e^w − 1)/w` is evaluated by its Taylor series.
const SERIES_CUTOFF: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingWeight<T> {
    x: T,
    ell: u32,
    eps: T,
    a: T,
}

impl<T: Real> SmoothingWeight<T> {
    pub fn new(x: T, ell: u32, eps: T) -> Result<Self> {
        if !(x >= T::lit(3.0)) || !x.is_finite() {
            return Err(Error::InvalidInput(format!("weight needs finite x >= 3, got {x:?}")));
        }
        if ell == 0 {
            return Err(Error::InvalidInput("weight needs ℓ >= 1".into()));
        }
        if !(eps > T::zero() && eps < T::lit(0.25)) {
            return Err(Error::InvalidInput(format!("weight needs ε in (0, 1/4), got {eps:?}")));
        }
        let a = eps / (T::lit(2.0) * T::from_u32(ell).expect("u32") * x.ln());
        Ok(Self { x, ell, eps, a })
    }

    /// `ℓ = 4 c m`, `ε = 8ℓ x^{−1/(8ℓ)}`: the parameter choice used to bound
    /// sums attached to `Sym^m`. Only valid once `ε < 1/4`, i.e. for very
    /// large `x`.
    pub fn proof_preset(x: T, m: u32, c: u32) -> Result<Self> {
        let ell = 4 * c.max(1) * m.max(1);
        let ell_t = T::from_u32(ell).expect("u32");
        let eps = T::lit(8.0) * ell_t * x.powf(-T::one() / (T::lit(8.0) * ell_t));
        Self::new(x, ell, eps)
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn eps(&self) -> T {
        self.eps
    }

    /// `A = ε / (2ℓ log x)`.
    pub fn a(&self) -> T {
        self.a
    }

    /// Half-width of the edges, `2ℓA = ε / log x`.
    pub fn edge(&self) -> T {
        T::lit(2.0) * T::from_u32(self.ell).expect("u32") * self.a
    }

    /// `[1/2 − ε/log x, 1 + ε/log x]`.
    pub fn support(&self) -> (T, T) {
        (T::lit(0.5) - self.edge(), T::one() + self.edge())
    }

    /// Distribution function of the sum of `ℓ` independent `U[0, 1]`.
    fn irwin_hall_cdf(&self, u: T) -> T {
        let ell = T::from_u32(self.ell).expect("u32");
        if u <= T::zero() {
            return T::zero();
        }
        if u >= ell {
            return T::one();
        }
        if u > ell / T::lit(2.0) {
            return T::one() - self.irwin_hall_cdf(ell - u);
        }
        let n = self.ell as usize;
        let mut acc = T::zero();
        let mut binom = T::one();
        let mut k = 0usize;
        while k <= n && T::from_usize_lossy(k) < u {
            let term = binom * (u - T::from_usize_lossy(k)).powi(n as i32);
            acc = if k.is_multiple_of(2) { acc + term } else { acc - term };
            binom = binom * T::from_usize_lossy(n - k) / T::from_usize_lossy(k + 1);
            k += 1;
        }
        let factorial = (1..=n).fold(T::one(), |f, j| f * T::from_usize_lossy(j));
        (acc / factorial).max(T::zero()).min(T::one())
    }

    /// `φ(t)`.
    pub fn phi(&self, t: T) -> T {
        let half = T::lit(0.5);
        if t >= half && t <= T::one() {
            return T::one();
        }
        let (lo, hi) = self.support();
        if t <= lo || t >= hi {
            return T::zero();
        }
        let width = T::lit(2.0) * self.a;
        let upper = (T::one() + self.edge() - t) / width;
        let lower = (half - t) / width;
        (self.irwin_hall_cdf(upper) - self.irwin_hall_cdf(lower)).max(T::zero()).min(T::one())
    }

    /// `Φ(z) = ∫ φ(t) e^{−zt} dt` in closed form.
    pub fn laplace(&self, z: Complex<T>) -> Complex<T> {
        let len = T::lit(0.5) + self.edge();
        let shift = T::one() + self.edge();
        let box_part = exp_ratio(z * len) * len;
        let smooth = exp_ratio(z * (T::lit(2.0) * self.a)).powu(self.ell);
        (-(z * shift)).exp() * box_part * smooth
    }

    /// Breakpoints of the piecewise-polynomial structure of `φ`, ascending.
    pub fn breakpoints(&self) -> Vec<T> {
        let width = T::lit(2.0) * self.a;
        let (lo, _) = self.support();
        let mut out: Vec<T> = (0..=self.ell).map(|k| lo + width * T::from_u32(k).expect("u32")).collect();
        out.extend((0..=self.ell).map(|k| T::one() + width * T::from_u32(k).expect("u32")));
        out
    }

    /// `∫ φ(t) e^{−zt} dt` by Gauss-Legendre on each polynomial piece,
    /// subdivided so that `|z| h <= 2` on every panel.
    pub fn laplace_quadrature(&self, z: Complex<T>) -> Complex<T> {
        let rule = GaussLegendre::<T>::new(self.ell as usize + 24);
        let bp = self.breakpoints();
        let n = self.ell as usize;
        let mut pieces: Vec<(T, T)> = bp[..=n].windows(2).map(|w| (w[0], w[1])).collect();
        pieces.push((bp[n], bp[n + 1]));
        pieces.extend(bp[n + 1..].windows(2).map(|w| (w[0], w[1])));

        // Kahan-compensated accumulation of the panel integrals.
        let mut sum = Complex::new(T::zero(), T::zero());
        let mut comp = Complex::new(T::zero(), T::zero());
        for (a, b) in pieces {
            let panels = (z.norm() * (b - a) / T::lit(2.0)).ceil().max(T::one());
            let count = panels.to_usize().unwrap_or(1);
            let h = (b - a) / panels;
            for k in 0..count {
                let lo = a + h * T::from_usize_lossy(k);
                let hi = if k + 1 == count { b } else { lo + h };
                let (re, im) = rule.integrate_pair(lo, hi, |t| {
                    let e = (-(z * t)).exp() * self.phi(t);
                    (e.re, e.im)
                });
                let y = Complex::new(re, im) - comp;
                let t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
        }
        sum
    }
}

/// `(e^w − 1) / w`, accurate near `w = 0`.
fn exp_ratio<T: Real>(w: Complex<T>) -> Complex<T> {
    if w.norm() < T::lit(SERIES_CUTOFF) {
        let one = Complex::new(T::one(), T::zero());
        let c = |v: f64| Complex::new(T::lit(v), T::zero());
        return one + w * (c(0.5) + w * (c(1.0 / 6.0) + w * c(1.0 / 24.0)));
    }
    // e^w − 1 without cancellation in the real part.
    let (s, c) = w.im.sin_cos();
    let half_sin = (w.im / T::lit(2.0)).sin();
    let re = w.re.exp_m1() * c - T::lit(2.0) * half_sin * half_sin;
    let im = w.re.exp() * s;
    Complex::new(re, im) / w
}

/// `max_z |∫ φ e^{−zt} − Φ(z)|` comparing the pointwise weight against the
/// closed-form transform.
pub fn weight_selfcheck<T: Real>(w: &SmoothingWeight<T>, zs: &[Complex<T>]) -> Result<T> {
    if zs.is_empty() {
        return Err(Error::InvalidInput("self-check needs at least one z".into()));
    }
    Ok(zs
        .iter()
        .map(|&z| (w.laplace_quadrature(z) - w.laplace(z)).norm())
        .fold(T::zero(), |a, b| a.max(b)))
}
