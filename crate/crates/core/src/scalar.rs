//! Scalar abstraction shared by every numeric type in the crate.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + FromStr + Display + Debug + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, used for literals and random draws.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Bit pattern used for hashing exact values. `-0` and `+0` map together.
    fn key(self) -> (u64, i16, i8) {
        if self.is_zero() {
            return Self::zero().integer_decode();
        }
        self.integer_decode()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
