//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};

/// Real floating-point scalar the walk machinery is generic over: `f32` or `f64`.
///
/// Besides the arithmetic bounds, each implementation carries the tolerances
/// that make sense at its precision. The `f64` values are the ones the rest of
/// the crate documents.
pub trait Real:
    Float + FloatConst + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Threshold below which two eigenvalues, a `sin α`, or a spinor norm are
    /// treated as zero / coincident.
    fn degeneracy_tol() -> Self;

    /// Tolerance used when validating Hermiticity, unit trace and positivity.
    fn check_tol() -> Self;

    /// Magnitude of rounding dust that may be clipped from probabilities.
    fn dust() -> Self;

    /// Converts an `f64` literal. Every finite `f64` is representable (up to
    /// rounding) in both supported types, so this never fails.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_usize(n: usize) -> Self {
        Self::from(n).expect("integer representable in scalar type")
    }

    #[inline]
    fn two_pi() -> Self {
        Self::TAU()
    }
}

impl Real for f64 {
    fn degeneracy_tol() -> Self {
        1e-9
    }
    fn check_tol() -> Self {
        1e-10
    }
    fn dust() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn degeneracy_tol() -> Self {
        1e-4
    }
    fn check_tol() -> Self {
        1e-4
    }
    fn dust() -> Self {
        1e-6
    }
}

/// Wraps an angle into `[-π, π)`.
pub fn wrap_pi<T: Real>(x: T) -> T {
    wrap_period(x, T::two_pi())
}

/// Wraps `x` into `[-period/2, period/2)`.
pub fn wrap_period<T: Real>(x: T, period: T) -> T {
    let half = period / T::lit(2.0);
    let mut y = x - period * ((x + half) / period).floor();
    // floor() rounding can land exactly on +half
    if y >= half {
        y -= period;
    }
    if y < -half {
        y += period;
    }
    y
}
