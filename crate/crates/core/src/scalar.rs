//! Scalar abstraction: every numeric routine in this crate is generic over a
//! floating-point type implementing [`Real`].
//!
//! `f64` is the working precision for all shipped tolerances; `f32` is
//! supported for callers that can live with its accuracy.

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable throughout the crate: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + std::fmt::Debug + std::fmt::Display + 'static
{
    /// Lossless-enough conversion from an `f64` constant.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant must convert into the scalar type")
    }

    /// Conversion from a lattice offset.
    #[inline]
    fn of_i64(v: i64) -> Self {
        Self::from_i64(v).expect("i64 offset must convert into the scalar type")
    }

    /// Conversion to `f64` for diagnostics and serialization.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
