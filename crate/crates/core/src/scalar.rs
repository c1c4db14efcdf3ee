//! Floating point abstraction shared by every formula in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar the closed forms, the amplitude oracle and the geometry are
/// written against. Implemented for `f32` and `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Absolute tolerance for probability comparisons, singular
    /// denominators and normalization checks.
    fn tolerance() -> Self;

    /// Converts an `f64` literal. Every literal used by the crate is
    /// representable in both `f32` and `f64`.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("literal representable in scalar type")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Lossy conversion used for diagnostics.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    #[inline]
    fn tolerance() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    // f32 carries ~7 decimal digits; 1e-12 would reject ordinary rounding.
    #[inline]
    fn tolerance() -> Self {
        1e-6
    }
}
