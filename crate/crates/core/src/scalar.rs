//! Numeric abstraction shared by coordinates and weights.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// An ordered field used for rectangle coordinates and vertex weights.
///
/// Exact rationals are the reference instantiation; `f64` works as long as
/// inputs are finite. Integer types satisfy the bounds but are not fields,
/// so LP values (which halve weights) would truncate. Use a rational instead.
pub trait Scalar:
    Num + Copy + PartialOrd + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half(self) -> Self {
        self / Self::two()
    }

    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("rank fits the scalar type")
    }

    /// Total order on the values that pass family validation (no NaN).
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other)
            .expect("scalar values are totally ordered after validation")
    }
}

impl<T> Scalar for T where
    T: Num
        + Copy
        + PartialOrd
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

pub(crate) fn sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v)
}

pub(crate) fn min_by_scalar<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}
