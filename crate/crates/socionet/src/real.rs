//! Scalar abstraction for the numerical layers.

use std::fmt;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the heat-content and comparison code is generic
/// over. Implemented by `f32` and `f64` through the blanket impl.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Lift an `f64` constant into `Self`.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant representable in Real")
    }

    /// Lift a count into `Self` (rounded for narrow types).
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).unwrap_or_else(|| Self::of(n as f64))
    }

    /// Lift a `u64` count into `Self`.
    fn of_u64(n: u64) -> Self {
        Self::from_u64(n).unwrap_or_else(|| Self::of(n as f64))
    }
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Sum<T>
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_norm<T: Real>(xs: &[T]) -> T {
        xs.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    #[test]
    fn works_for_both_widths() {
        assert_eq!(two_norm(&[3.0f64, 4.0]), 5.0);
        assert_eq!(two_norm(&[3.0f32, 4.0]), 5.0);
        assert_eq!(f64::of_u64(7), 7.0);
        assert_eq!(f32::of_usize(3), 3.0);
    }
}
