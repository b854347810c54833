//! Scalar abstraction for the numeric core.
//!
//! Everything numeric in this crate (angles, matrices, state vectors) is
//! generic over a floating-point scalar so the same passes run at `f32` or
//! `f64` precision. The concrete aliases at the crate root fix `f64`, which
//! is what the CLI and the verification tolerances are calibrated for.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar underlying all circuit math.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Threshold below which a canonically reduced angle counts as zero.
    fn angle_zero_tol() -> Self;

    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 converts to any scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }

    fn pi() -> Self {
        Self::from_f64_lossy(std::f64::consts::PI)
    }

    fn two_pi() -> Self {
        Self::from_f64_lossy(2.0 * std::f64::consts::PI)
    }

    fn four_pi() -> Self {
        Self::from_f64_lossy(4.0 * std::f64::consts::PI)
    }
}

impl Scalar for f64 {
    fn angle_zero_tol() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn angle_zero_tol() -> Self {
        1e-5
    }
}
