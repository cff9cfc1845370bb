//! Scalar abstraction for the measure, Chebyshev and smoothing-weight math.
//!
//! Everything that is pure real analysis is written against [`Real`] so it
//! runs in `f32` or `f64`. Arithmetic on primes and point counts stays in
//! machine integers and does not go through this trait.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}
