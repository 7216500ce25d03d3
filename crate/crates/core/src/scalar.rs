use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar used by datasets, learners, and evaluation.
///
/// A blanket impl covers any type with the required numeric and serde
/// bounds; in practice that means `f32` and `f64`. Conversions through
/// `f64` are used for hyperparameters and report values, where `f32`
/// rounding is acceptable.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant into this scalar type (rounding for `f32`).
    fn from_f64_lossy(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 must convert to scalar")
    }

    /// Converts this scalar to `f64` for reporting and cross-type math.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar must convert to f64")
    }

    /// Converts a count into this scalar type.
    fn from_usize_lossy(value: usize) -> Self {
        Self::from_usize(value).expect("count must convert to scalar")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + Sum
        + Debug
        + Display
        + Serialize
        + DeserializeOwned
        + Send
        + Sync
        + 'static
{
}
