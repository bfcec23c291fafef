//! Scalar abstraction for the numerical kernels.
//!
//! Everything numeric in this crate is written against [`Real`] so the same
//! code runs in `f32` or `f64`. The accuracy contracts documented on the
//! individual operations are stated for `f64`; `f32` gets whatever precision
//! its mantissa allows.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Conversion from an `f64` constant. Panics on NaN input, which only
    /// happens on programmer error (all call sites pass literals).
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize fits in float")
    }

    fn of_i64(n: i64) -> Self {
        Self::from_i64(n).expect("i64 fits in float")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("float converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
