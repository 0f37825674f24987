//! Floating-point abstraction shared by the virtue, world and experiment code.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// A real number type the simulator can run on.
///
/// Implemented for `f32` and `f64`. Random draws are always produced in `f64`
/// and converted with [`Scalar::lit`], so the draw sequence for a seed does not
/// depend on the chosen precision.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal or draw into this type.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 converts to any float type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("float converts to f64")
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    #[inline]
    fn two() -> Self {
        Self::lit(2.0)
    }

    /// Restricts `self` to `[lo, hi]`.
    #[inline]
    fn clamp_to(self, lo: Self, hi: Self) -> Self {
        self.max(lo).min(hi)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
