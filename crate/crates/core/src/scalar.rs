use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point type the cascade and estimator math is written against.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Converts a count to the scalar type.
    fn from_count(count: usize) -> Self {
        Self::from_usize(count).expect("count representable as float")
    }

    /// Converts a probability or literal constant.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("literal representable as float")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `ln(1 - p)` computed without cancellation for small `p`.
pub(crate) fn ln_complement<T: Scalar>(p: T) -> T {
    (-p).ln_1p()
}
