//! Weighted Chebyshev prime sums, their partial-summation identity,
//! symmetric-power von Mangoldt values and smoothed sums over prime powers.

mod smoothed;
mod theta;
mod weight;

pub use smoothed::{smoothed_psi, smoothed_psi_coverage};
pub use theta::{
    cheb_prime_sum, joint_partial_summation, lambda_sym, partial_summation, theta_fm, theta_joint,
    ChebPrimeSum, PartialSummation,
};
pub use weight::{weight_selfcheck, SmoothingWeight, DEFAULT_EPS, DEFAULT_ELL};
