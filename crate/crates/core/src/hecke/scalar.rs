use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Coefficient field for Hecke computations: `f64` for the numeric mode,
/// `BigRational` for the exact mode.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn recip(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn from_i64(v: i64) -> Self;
}

impl Scalar for f64 {
    fn recip(&self) -> Self {
        1.0 / self
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for BigRational {
    fn recip(&self) -> Self {
        BigRational::recip(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
}
