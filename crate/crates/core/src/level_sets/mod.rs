//! Test functions, their level sets, and the level-set bounds.
//!
//! For a bounded f whose upper level sets A_t = {f ≥ t} lie in a class,
//! `|E f(S) − E f(Z)| ≤ 2‖f‖∞ sup_t |P(S ∈ A_t) − P(Z ∈ A_t)|`, and the
//! supremum is the Kolmogorov distance between the laws of f(S) and f(Z).

mod function;
mod law;
mod quasiconcave;
mod sets;

pub use function::{
    monotone_compose, normalize, Activation, Blackbox, Cut, FunctionSpec, LinearCombo, MonotoneTable, Ridge,
};
pub use law::{pushforward_kolmogorov, EmpiricalLaw, GaussianPushforward, RealLaw};
pub use quasiconcave::{quasiconcavity_check, QuasiconcavityConfig, QuasiconcavityOutcome, Witness};
pub use sets::{FavorableSetInstance, HalfSpace, SetDescriptor};

use crate::be_uniform::{b_d, FavorableClass};
use crate::error::{Error, Result};
use crate::Scalar;

fn check_finite_nonneg<S: Scalar>(name: &str, x: S) -> Result<()> {
    if !x.is_finite() || x < S::zero() {
        return Err(Error::InvalidArgument(format!("{name} must be finite and non-negative, got {x}")));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

/// 2‖f‖∞·gap
pub fn level_set_bound<S: Scalar>(sup_norm: S, prob_gap: S) -> Result<S> {
    check_finite_nonneg("sup-norm", sup_norm)?;
    if !(prob_gap >= S::zero() && prob_gap <= S::one()) {
        return Err(Error::InvalidArgument(format!("probability gap {prob_gap} is outside [0, 1]")));
    }
    Ok(S::lit(2.0) * sup_norm * prob_gap)
}

/// Coefficient of M for f = Σ λ_j f_j with Σ|λ_j| ≤ c, every f_j bounded by
/// `sup_f_norm` and with level sets in `class`:
/// `(2·b_d·c/√n)·β̄·sup_f_norm`.
pub fn combo1_bound<S: Scalar>(c: S, sup_f_norm: S, class: &FavorableClass, beta_norm: S, n: usize) -> Result<S> {
    check_finite_nonneg("c", c)?;
    check_finite_nonneg("sup-norm", sup_f_norm)?;
    check_finite_nonneg("beta_norm", beta_norm)?;
    check_n(n)?;
    Ok(S::lit(2.0) * b_d::<S>(class)? * c / S::from_count(n).sqrt() * beta_norm * sup_f_norm)
}

/// Coefficient of M when each level set is a disjoint union of sets from
/// the listed classes: `(2‖f‖∞/√n)·(Σ_j b_d(𝒜_j))·β̄`.
pub fn combo2_bound<S: Scalar>(classes: &[FavorableClass], sup_norm: S, beta_norm: S, n: usize) -> Result<S> {
    if classes.is_empty() {
        return Err(Error::InvalidArgument("no classes given".into()));
    }
    check_finite_nonneg("sup-norm", sup_norm)?;
    check_finite_nonneg("beta_norm", beta_norm)?;
    check_n(n)?;
    let mut total = S::zero();
    for c in classes {
        total = total + b_d::<S>(c)?;
    }
    Ok(S::lit(2.0) * sup_norm / S::from_count(n).sqrt() * total * beta_norm)
}
