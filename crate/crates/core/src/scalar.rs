//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by the geometry, kernels and optimizers.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Feasibility / pivot tolerance used by the zonoid LP.
    fn lp_tolerance() -> Self;

    /// Threshold below which a vector is treated as the zero vector.
    fn zero_norm() -> Self;

    /// Lossless-enough conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }
}

impl Real for f64 {
    fn lp_tolerance() -> Self {
        1e-9
    }
    fn zero_norm() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn lp_tolerance() -> Self {
        1e-4
    }
    fn zero_norm() -> Self {
        1e-6
    }
}

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}
