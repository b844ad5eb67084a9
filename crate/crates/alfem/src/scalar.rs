//! Scalar abstraction shared by every numerical kernel.
//!
//! All geometry, assembly, and error computations are generic over [`Real`],
//! so the whole pipeline runs in `f32` or `f64` (the crate-root aliases pick
//! `f64`, which is what the command-line studies use). Operations that go
//! through the sparse direct solver need the slightly stronger
//! [`SolveScalar`], which additionally ties into the solver backend's own
//! scalar trait; both bounds are blanket-implemented for `f32` and `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable in mesh geometry, assembly, and integration.
///
/// Numeric constants enter generic code through [`Real::cast`], so kernels
/// never commit to a concrete precision.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant into `Self`.
    ///
    /// Panics only for scalars that cannot represent finite `f64` values,
    /// which none of the supported types hit.
    #[inline]
    fn cast(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant must be representable")
    }

    /// Views `self` as `f64` for reporting and output formatting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar must be viewable as f64")
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
        + Sum
        + Default
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Scalars accepted by the sparse direct factorization backend.
///
/// The backend (`faer`) keys its factorizations on its own scalar trait; its
/// method surface is disjoint from `num_traits::Float`, so the combined bound
/// is unambiguous. `f32` and `f64` satisfy both.
pub trait SolveScalar: Real + faer::traits::ComplexField {}

impl<T> SolveScalar for T where T: Real + faer::traits::ComplexField {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cast_round_trips_common_constants() {
        assert_eq!(<f64 as Real>::cast(0.25), 0.25);
        assert_eq!(<f32 as Real>::cast(0.25), 0.25f32);
        assert_eq!(1.5f64.as_f64(), 1.5);
        assert_eq!(1.5f32.as_f64(), 1.5);
    }

    fn norm<T: Real>(v: &[T]) -> T {
        v.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    #[test]
    fn kernels_are_generic_over_precision() {
        assert_eq!(norm(&[3.0f64, 4.0]), 5.0);
        assert_eq!(norm(&[3.0f32, 4.0]), 5.0);
    }
}
