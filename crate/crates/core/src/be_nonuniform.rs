//! Non-uniform Berry–Esseen bound and the ReLU / squared-ReLU ridge bounds.
//!
//! Every result is the coefficient of the unknown absolute constant A.

use crate::bound::{BoundValue, ConstantSymbol};
use crate::dist::{MomentSummary, Side, UnivariateSpec};
use crate::error::{Error, Result};
use crate::scalar::CompensatedSum;
use crate::Scalar;

/// Independent summands W_1..W_n and a threshold t ≥ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RidgeBoundInput<S: Scalar> {
    summands: Vec<UnivariateSpec<S>>,
    t: S,
    scale: S,
}

impl<S: Scalar> RidgeBoundInput<S> {
    pub fn new(summands: Vec<UnivariateSpec<S>>, t: S) -> Result<Self> {
        if t.is_nan() || t < S::zero() || t.is_infinite() {
            return Err(Error::InvalidArgument(format!("threshold t = {t} must be finite and non-negative")));
        }
        if summands.is_empty() {
            return Err(Error::InvalidArgument("no summands".into()));
        }
        let scale = MomentSummary::of(&summands, false)?.scale();
        Ok(Self { summands, t, scale })
    }

    pub fn summands(&self) -> &[UnivariateSpec<S>] {
        &self.summands
    }

    pub fn t(&self) -> S {
        self.t
    }

    /// B_n = √(Σ E W_k²)
    pub fn scale(&self) -> S {
        self.scale
    }

    /// Σ_k g(W_k), compensated.
    fn sum(&self, g: impl Fn(&UnivariateSpec<S>) -> Result<S>) -> Result<S> {
        let mut acc = CompensatedSum::new();
        for w in &self.summands {
            acc.add(g(w)?);
        }
        Ok(acc.value())
    }
}

/// Non-uniform bound on `|P(S/B ≤ x) − Φ(x)|`:
///
/// `Σ_k E X_k² 1{|X_k| > (1+|x|)B} / ((1+|x|)B)² + E|X_k|³ 1{|X_k| ≤ (1+|x|)B} / ((1+|x|)B)³`.
pub fn shevtsova_delta_bound<S: Scalar>(x: S, summands: &[UnivariateSpec<S>]) -> Result<BoundValue<S>> {
    if x.is_nan() {
        return Err(Error::InvalidArgument("x is NaN".into()));
    }
    let input = RidgeBoundInput::new(summands.to_vec(), S::zero())?;
    if x.is_infinite() {
        return Ok(BoundValue::zero(Some(ConstantSymbol::A)).with("tail_second", S::zero(), S::zero()).with(
            "body_third",
            S::zero(),
            S::zero(),
        ));
    }
    let c = (S::one() + x.abs()) * input.scale();
    let tail = input.sum(|w| w.truncated_second_moment(c, Side::Above))? / (c * c);
    let body = input.sum(|w| w.truncated_third_moment(c, Side::AtOrBelow))? / (c * c * c);
    Ok(BoundValue::zero(Some(ConstantSymbol::A)).with("tail_second", S::zero(), tail).with("body_third", S::zero(), body))
}

/// Bound on `|E σ(S − t) − E σ(BZ − t)|` for σ = ReLU:
///
/// `(1/B)Σ E W² 1{|W| ≥ t+B} + ½ Σ E|W|³ 1{|W| < t+B} / (t+B)²`.
pub fn relu_bound<S: Scalar>(input: &RidgeBoundInput<S>) -> Result<BoundValue<S>> {
    let b = input.scale();
    let c = input.t() + b;
    let tail = input.sum(|w| w.truncated_second_moment(c, Side::AtOrAbove))? / b;
    let body = input.sum(|w| w.truncated_third_moment(c, Side::Below))? * S::lit(0.5) / (c * c);
    Ok(BoundValue::zero(Some(ConstantSymbol::A)).with("tail_second", S::zero(), tail).with("body_third", S::zero(), body))
}

/// Bound for σ = ReLU²:
///
/// `2Σ E W² ln|W| 1{|W| ≥ t+B} + 2[1 + ln(1 + t/B)] Σ E W² 1{|W| ≥ t+B}
///  + 2/(B(1 + t/B)) Σ E|W|³ 1{|W| < t+B}`.
///
/// The logarithmic piece is negative when tail mass sits in (t+B, 1) and
/// is kept as is.
pub fn relu_sq_bound<S: Scalar>(input: &RidgeBoundInput<S>) -> Result<BoundValue<S>> {
    let b = input.scale();
    let c = input.t() + b;
    let two = S::lit(2.0);
    let ratio = S::one() + input.t() / b;
    let log_tail = two * input.sum(|w| w.log_weighted_truncated_second_moment(c))?;
    let tail = two * (S::one() + ratio.ln()) * input.sum(|w| w.truncated_second_moment(c, Side::AtOrAbove))?;
    let body = two / (b * ratio) * input.sum(|w| w.truncated_third_moment(c, Side::Below))?;
    Ok(BoundValue::zero(Some(ConstantSymbol::A))
        .with("log_tail_second", S::zero(), log_tail)
        .with("tail_second", S::zero(), tail)
        .with("body_third", S::zero(), body))
}
