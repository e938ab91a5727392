//! Scalar abstraction for the distribution kernel.
//!
//! The closed-form layer (baselines, outer transforms, family evaluation) is
//! generic over any IEEE float; the estimation and simulation layers
//! instantiate it at `f64`, which is the precision all stated tolerances
//! assume.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};

/// Floating-point scalar usable by the distribution kernel (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssignOps + Debug + Display + Send + Sync + 'static
{
    /// Lift an `f64` constant into the scalar type.
    #[inline]
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("constant not representable in scalar type")
    }

    /// Lossy view as `f64`, used for error reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssignOps
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// log(1 - e^{-d}) for d >= 0 without cancellation on either side.
#[inline]
pub fn ln_one_minus_exp_neg<T: Real>(d: T) -> T {
    if d <= T::zero() {
        return T::neg_infinity();
    }
    if d > T::LN_2() {
        (-(-d).exp()).ln_1p()
    } else {
        (-(-d).exp_m1()).ln()
    }
}
