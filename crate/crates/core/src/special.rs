//! Standard normal density and distribution functions.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use libm::erfc;

use crate::Scalar;

/// (2π)^{-1/2}
pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

pub fn normal_pdf<S: Scalar>(z: S) -> S {
    let z = z.as_f64();
    S::lit((-0.5 * z * z).exp() / (2.0 * PI).sqrt())
}

/// Φ(z), accurate in both tails.
pub fn normal_cdf<S: Scalar>(z: S) -> S {
    let z = z.as_f64();
    if z == f64::NEG_INFINITY {
        return S::zero();
    }
    if z == f64::INFINITY {
        return S::one();
    }
    S::lit(0.5 * erfc(-z * FRAC_1_SQRT_2))
}

/// 1 − Φ(z), accurate in the upper tail.
pub fn normal_sf<S: Scalar>(z: S) -> S {
    normal_cdf(-z)
}

/// P(a ≤ Z ≤ b) for a ≤ b, computed on the side that avoids cancellation.
pub fn normal_interval<S: Scalar>(a: S, b: S) -> S {
    if a >= S::zero() {
        normal_sf(a) - normal_sf(b)
    } else if b <= S::zero() {
        normal_cdf(b) - normal_cdf(a)
    } else {
        S::one() - normal_cdf(a) - normal_sf(b)
    }
}
