//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All distribution, bound and search code is written against [`Scalar`],
//! which is implemented for `f32` and `f64`. Special functions (the error
//! function, quadrature nodes) are evaluated in `f64` and narrowed, so the
//! `f32` instantiation is limited to single precision in the usual way.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real scalar type used throughout the crate.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Smallest tolerance that is meaningful at this precision. Requested
    /// tolerances are clamped from below by this value.
    const TOLERANCE_FLOOR: f64;

    /// Converts an `f64` literal. Never fails for the implemented types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// Lossless for `f64`, widening for `f32`.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }

    /// Requested tolerance clamped to what this precision can resolve.
    #[inline]
    fn tol(requested: f64) -> Self {
        Self::lit(requested.max(Self::TOLERANCE_FLOOR))
    }
}

impl Scalar for f32 {
    const TOLERANCE_FLOOR: f64 = 1e-5;
}

impl Scalar for f64 {
    const TOLERANCE_FLOOR: f64 = 1e-15;
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<S> {
    sum: S,
    comp: S,
}

impl<S: Scalar> CompensatedSum<S> {
    pub fn new() -> Self {
        Self { sum: S::zero(), comp: S::zero() }
    }

    pub fn add(&mut self, x: S) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> S {
        self.sum + self.comp
    }
}

impl<S: Scalar> FromIterator<S> for CompensatedSum<S> {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancelled_terms() {
        let xs = [1.0e16_f64, 1.0, -1.0e16, 1.0];
        let naive: f64 = xs.iter().sum();
        let acc: CompensatedSum<f64> = xs.iter().copied().collect();
        assert_eq!(acc.value(), 2.0);
        assert_ne!(naive, 2.0);
    }

    #[test]
    fn tolerance_is_clamped_per_precision() {
        assert_eq!(f64::tol(1e-12), 1e-12);
        assert_eq!(f32::tol(1e-12), 1e-5);
    }
}
