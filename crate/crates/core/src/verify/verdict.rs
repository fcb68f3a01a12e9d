use serde::{Deserialize, Serialize};

use crate::bound::BoundValue;
use crate::error::{Error, Result};
use crate::Scalar;

use super::mc::MCEstimate;

/// Left-hand side Δ_f of an inequality, exact or estimated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound = "S: Scalar")]
pub enum Lhs<S> {
    Exact { value: S },
    MonteCarlo { estimate: MCEstimate<S> },
}

impl<S: Scalar> Lhs<S> {
    /// Point value of |Δ_f|.
    pub fn value(&self) -> S {
        match self {
            Lhs::Exact { value } => value.abs(),
            Lhs::MonteCarlo { estimate } => estimate.mean.abs(),
        }
    }

    pub fn std_error(&self) -> S {
        match self {
            Lhs::Exact { .. } => S::zero(),
            Lhs::MonteCarlo { estimate } => estimate.std_error,
        }
    }
}

/// How verdicts are decided.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerdictPolicy {
    /// Value substituted for the free constant.
    pub constant: f64,
    /// Monte Carlo slack in standard errors.
    pub z: f64,
    /// |Δ_f| at or below this counts as zero.
    pub zero_tol: f64,
}

impl Default for VerdictPolicy {
    fn default() -> Self {
        Self { constant: 1.0, z: 3.0, zero_tol: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
#[serde(bound = "S: Scalar")]
pub enum Verdict<S> {
    HoldsAtUnit,
    /// Holds once the free constant is at least `constant`.
    HoldsWithinConstant { constant: S },
    ViolatedEvenScaled,
}

impl<S: Scalar> Verdict<S> {
    pub fn label(&self) -> String {
        match self {
            Verdict::HoldsAtUnit => "holds_at_unit".into(),
            Verdict::HoldsWithinConstant { constant } => format!("holds_within_constant({constant})"),
            Verdict::ViolatedEvenScaled => "violated_even_scaled".into(),
        }
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Verdict::ViolatedEvenScaled)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct VerdictReport<S> {
    pub lhs: Lhs<S>,
    pub rhs: BoundValue<S>,
    /// |Δ_f| / (c0 + c1); infinite when the bound vanishes.
    pub ratio_at_unit_constant: S,
    pub verdict: Verdict<S>,
    pub notes: Vec<String>,
}

impl<S: Scalar> VerdictReport<S> {
    /// Fields `lhs, lhs_stderr, c0, c1, ratio_at_unit, verdict` for a CSV row.
    pub fn csv_fields(&self) -> [String; 6] {
        [
            self.lhs.value().to_string(),
            self.lhs.std_error().to_string(),
            self.rhs.c0.to_string(),
            self.rhs.c1.to_string(),
            self.ratio_at_unit_constant.to_string(),
            self.verdict.label(),
        ]
    }
}

/// Compares |Δ_f| with `c0 + c1·K`.
///
/// Holds at unit when |Δ_f| minus `z` standard errors is at most the bound
/// with K = `policy.constant`. Otherwise, if the bound has a positive free
/// coefficient, reports the smallest K that makes the point value fit; a
/// bound without free constant is then violated.
pub fn verify_inequality<S: Scalar>(lhs: Lhs<S>, rhs: BoundValue<S>, policy: &VerdictPolicy) -> Result<VerdictReport<S>> {
    let value = lhs.value();
    if !value.is_finite() || !lhs.std_error().is_finite() {
        return Err(Error::Numeric("left-hand side is not finite".into()));
    }
    if !rhs.c0.is_finite() || !rhs.c1.is_finite() {
        return Err(Error::Numeric("bound is not finite".into()));
    }
    let unit = rhs.at_unit();
    let ratio = if unit > S::zero() {
        value / unit
    } else if value <= S::lit(policy.zero_tol) {
        S::zero()
    } else {
        S::infinity()
    };
    let low = (value - S::lit(policy.z) * lhs.std_error()).max(S::zero());
    let verdict = if value <= S::lit(policy.zero_tol) || low <= rhs.at(S::lit(policy.constant)) {
        Verdict::HoldsAtUnit
    } else if rhs.c1 > S::zero() {
        Verdict::HoldsWithinConstant { constant: (value - rhs.c0) / rhs.c1 }
    } else {
        Verdict::ViolatedEvenScaled
    };
    Ok(VerdictReport { lhs, rhs, ratio_at_unit_constant: ratio, verdict, notes: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound::ConstantSymbol;

    fn coef(c1: f64) -> BoundValue<f64> {
        BoundValue::coefficient("x", ConstantSymbol::A, c1)
    }

    #[test]
    fn examples() {
        let p = VerdictPolicy::default();
        let r = verify_inequality(Lhs::Exact { value: 0.0239 }, coef(0.25), &p).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsAtUnit);
        assert!((r.ratio_at_unit_constant - 0.0956).abs() < 1e-12);
        let z = verify_inequality(Lhs::Exact { value: 0.0 }, coef(0.0), &p).unwrap();
        assert_eq!(z.verdict, Verdict::HoldsAtUnit);
        let k = verify_inequality(Lhs::Exact { value: 1.0 }, coef(0.5), &p).unwrap();
        assert_eq!(k.verdict, Verdict::HoldsWithinConstant { constant: 2.0 });
        assert_eq!(k.verdict.label(), "holds_within_constant(2)");
    }

    #[test]
    fn constant_free_bound_can_fail() {
        let p = VerdictPolicy::default();
        let r = verify_inequality(Lhs::Exact { value: 0.3 }, BoundValue::constant("level_set", 0.25), &p).unwrap();
        assert!(r.verdict.is_violation());
    }

    #[test]
    fn monte_carlo_slack() {
        let p = VerdictPolicy::default();
        let est = MCEstimate { mean: -0.3, std_error: 0.02, n_samples: 1000, seed: 0 };
        let r = verify_inequality(Lhs::MonteCarlo { estimate: est }, BoundValue::constant("b", 0.25), &p).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsAtUnit);
        assert_eq!(r.csv_fields()[5], "holds_at_unit");
    }

    #[test]
    fn policy_constant_is_used() {
        let p = VerdictPolicy { constant: 4.0, ..Default::default() };
        let r = verify_inequality(Lhs::Exact { value: 1.0 }, coef(0.5), &p).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsAtUnit);
    }

    #[test]
    fn json_shape() {
        let r = verify_inequality(Lhs::Exact { value: 1.0 }, coef(0.5), &VerdictPolicy::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"]["verdict"], "holds_within_constant");
        assert_eq!(v["lhs"]["kind"], "exact");
        assert_eq!(v["rhs"]["constant_symbol"], "A");
    }
}
