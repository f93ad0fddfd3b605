//! Scalar abstraction shared by the model, the closed-form correlations and
//! the linear-algebra oracles.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance used when validating density-matrix invariants.
    const STATE_TOL: f64;
    /// Below this magnitude both halves of the discord ratio count as zero.
    const DEGENERATE_TOL: f64;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn state_tol() -> Self {
        Self::lit(Self::STATE_TOL)
    }

    #[inline]
    fn degenerate_tol() -> Self {
        Self::lit(Self::DEGENERATE_TOL)
    }

    #[inline]
    fn sqrt3() -> Self {
        Self::lit(3.0).sqrt()
    }
}

impl Real for f32 {
    const STATE_TOL: f64 = 1e-5;
    const DEGENERATE_TOL: f64 = 1e-7;
}

impl Real for f64 {
    const STATE_TOL: f64 = 1e-12;
    const DEGENERATE_TOL: f64 = 1e-14;
}
