//! Chebyshev polynomials of the second kind in the angle variable,
//! `U_m(cos θ) = sin((m+1)θ) / sin θ`.

use crate::quadrature::GaussLegendre;
use crate::scalar::Real;
use crate::measure::st_density;

/// Default ceiling on the Chebyshev index.
pub const M_MAX: usize = 512;

/// Distance from 0 or π inside which the recurrence replaces the sine ratio.
pub const ENDPOINT_COLLAR: f64 = 1e-6;

/// `U_m(cos θ)` for `θ ∈ [0, π]`.
pub fn cheb_u<T: Real>(m: usize, theta: T) -> T {
    if m == 0 {
        return T::one();
    }
    let collar = T::lit(ENDPOINT_COLLAR);
    if theta <= collar || theta >= T::PI() - collar {
        return cheb_u_recurrence(m, theta.cos());
    }
    let v = (T::from_usize_lossy(m + 1) * theta).sin() / theta.sin();
    let bound = T::from_usize_lossy(m + 1);
    v.max(-bound).min(bound)
}

/// `U_m(x)` by `U_{k+1} = 2x U_k − U_{k−1}`.
pub fn cheb_u_recurrence<T: Real>(m: usize, x: T) -> T {
    let two_x = T::lit(2.0) * x;
    let (mut prev, mut cur) = (T::one(), two_x);
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = two_x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_0(cos θ), …, U_m(cos θ)` into `out` (length `m + 1`) by recurrence.
pub fn cheb_u_all<T: Real>(theta: T, out: &mut [T]) {
    if out.is_empty() {
        return;
    }
    let two_x = T::lit(2.0) * theta.cos();
    out[0] = T::one();
    if out.len() > 1 {
        out[1] = two_x;
    }
    for k in 2..out.len() {
        out[k] = two_x * out[k - 1] - out[k - 2];
    }
}

/// `⟨U_m, U_n⟩` in `L²([0, π], μ_ST)` by Gauss-Legendre in θ with
/// `4(m+n) + 16` nodes.
pub fn cheb_inner_product<T: Real>(m: usize, n: usize) -> T {
    let rule = GaussLegendre::<T>::new(4 * (m + n) + 16);
    rule.integrate(T::zero(), T::PI(), |t| cheb_u(m, t) * cheb_u(n, t) * st_density(t))
}
