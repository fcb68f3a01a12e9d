//! Uniform Berry–Esseen bounds over favorable set classes.

use serde::{Deserialize, Serialize};

use crate::bound::{BoundValue, ConstantSymbol};
use crate::error::{Error, Result};
use crate::linalg::norm2;
use crate::special::{normal_interval, INV_SQRT_2PI};
use crate::Scalar;

fn default_ball_constant() -> f64 {
    1.0
}

/// A class of sets with a known Gaussian isoperimetric constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FavorableClass {
    HalfSpaces,
    Convex { d: usize },
    /// Euclidean balls. The constant is only known to exist; the value used
    /// is configuration, not a derived fact.
    Balls {
        d: usize,
        #[serde(default = "default_ball_constant")]
        ball_constant: f64,
    },
}

impl FavorableClass {
    pub fn balls(d: usize) -> Self {
        FavorableClass::Balls { d, ball_constant: default_ball_constant() }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FavorableClass::HalfSpaces => Ok(()),
            FavorableClass::Convex { d } | FavorableClass::Balls { d, .. } if d == 0 => {
                Err(Error::InvalidArgument("class dimension must be at least 1".into()))
            }
            FavorableClass::Balls { ball_constant, .. } if !(ball_constant > 0.0 && ball_constant.is_finite()) => {
                Err(Error::InvalidArgument(format!("ball constant {ball_constant} must be positive")))
            }
            _ => Ok(()),
        }
    }

    /// Same class in dimension `d` (half-spaces are dimension free).
    pub fn with_dim(&self, d: usize) -> Self {
        match *self {
            FavorableClass::HalfSpaces => FavorableClass::HalfSpaces,
            FavorableClass::Convex { .. } => FavorableClass::Convex { d },
            FavorableClass::Balls { ball_constant, .. } => FavorableClass::Balls { d, ball_constant },
        }
    }
}

/// a_d of the class: (2π)^{-1/2} for half-spaces, 4d^{1/4} for convex sets,
/// the configured constant for balls.
pub fn isoperimetric_constant<S: Scalar>(class: &FavorableClass) -> Result<S> {
    class.validate()?;
    Ok(match *class {
        FavorableClass::HalfSpaces => S::lit(INV_SQRT_2PI),
        FavorableClass::Convex { d } => S::lit(4.0) * S::from_count(d).sqrt().sqrt(),
        FavorableClass::Balls { ball_constant, .. } => S::lit(ball_constant),
    })
}

/// b_d = max{1, a_d}
pub fn b_d<S: Scalar>(class: &FavorableClass) -> Result<S> {
    Ok(isoperimetric_constant::<S>(class)?.max(S::one()))
}

fn check_nonneg<S: Scalar>(name: &str, x: S) -> Result<()> {
    if x.is_nan() || x < S::zero() || x.is_infinite() {
        return Err(Error::InvalidArgument(format!("{name} must be finite and non-negative, got {x}")));
    }
    Ok(())
}

/// `b_d·β·M` where β is the (unnormalized) Lyapunov ratio.
pub fn bentkus_bound<S: Scalar>(class: &FavorableClass, beta: S) -> Result<BoundValue<S>> {
    check_nonneg("beta", beta)?;
    Ok(BoundValue::coefficient("bentkus", ConstantSymbol::M, b_d::<S>(class)? * beta))
}

/// `max{27, 1 + c·γ*·√(1+κ)}·Σ E|X|³` with c = 53, or 50 when the class is
/// closed under symmetric differences.
pub fn raic_bound<S: Scalar>(gamma_star: S, kappa: S, sum_third_moments: S, symmetric_closure: bool) -> Result<S> {
    check_nonneg("gamma_star", gamma_star)?;
    check_nonneg("kappa", kappa)?;
    check_nonneg("sum of third moments", sum_third_moments)?;
    let c = S::lit(if symmetric_closure { 50.0 } else { 53.0 });
    let factor = (S::one() + c * gamma_star * (S::one() + kappa).sqrt()).max(S::lit(27.0));
    Ok(factor * sum_third_moments)
}

/// `(b_d/√n)·β̄·M` with β̄ = (1/n)Σ E|Σ^{-1/2}X_i|³: the uniform bound on
/// `sup_A |P(S ∈ A) − P(Z ∈ A)|` over the class.
pub fn sup_prob_gap_bound<S: Scalar>(class: &FavorableClass, beta_norm: S, n: usize) -> Result<BoundValue<S>> {
    check_nonneg("beta_norm", beta_norm)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let c1 = b_d::<S>(class)? / S::from_count(n).sqrt() * beta_norm;
    Ok(BoundValue::coefficient("sup_prob_gap", ConstantSymbol::M, c1))
}

/// Largest ratio `φ(A^ε ∖ A)/ε` over the given ε for the half-space
/// A = {x : aᵀx ≥ b} under the standard Gaussian. The inner slab
/// `A ∖ A^{-ε}` is included too, so the orientation of `a` is irrelevant.
pub fn halfspace_perimeter_probe<S: Scalar>(a: &[S], b: S, epsilons: &[S]) -> Result<S> {
    let norm = norm2(a);
    if !(norm > S::zero()) {
        return Err(Error::InvalidArgument("half-space direction must be non-zero".into()));
    }
    if !b.is_finite() {
        return Err(Error::InvalidArgument("offset must be finite".into()));
    }
    let beta = b / norm;
    let mut best = S::zero();
    for &eps in epsilons {
        if !(eps > S::zero()) || !eps.is_finite() {
            return Err(Error::InvalidArgument(format!("epsilon {eps} must be positive")));
        }
        let outer = normal_interval(beta - eps, beta);
        let inner = normal_interval(beta, beta + eps);
        best = best.max(outer.max(inner) / eps);
    }
    Ok(best)
}
