//! Bounds as affine forms in an unspecified absolute constant.

use serde::{Deserialize, Serialize};

use crate::Scalar;

/// Name of the free constant a bound is linear in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstantSymbol {
    M,
    A,
}

/// One named piece of a bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct BoundComponent<S> {
    pub name: String,
    pub c0: S,
    pub c1: S,
}

/// The value `c0 + c1·K` for an unknown constant `K`, together with the
/// components that add up to it.
///
/// Most bounds here are non-negative. The squared-ReLU bound carries a
/// `E W² ln|W|` piece that can be negative, so signs are not enforced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct BoundValue<S> {
    pub c0: S,
    pub c1: S,
    pub constant_symbol: Option<ConstantSymbol>,
    pub breakdown: Vec<BoundComponent<S>>,
}

impl<S: Scalar> BoundValue<S> {
    pub fn zero(constant_symbol: Option<ConstantSymbol>) -> Self {
        Self { c0: S::zero(), c1: S::zero(), constant_symbol, breakdown: Vec::new() }
    }

    /// Bound with no free constant.
    pub fn constant(name: &str, c0: S) -> Self {
        Self::zero(None).with(name, c0, S::zero())
    }

    /// Bound `c1·K` with a single component.
    pub fn coefficient(name: &str, symbol: ConstantSymbol, c1: S) -> Self {
        Self::zero(Some(symbol)).with(name, S::zero(), c1)
    }

    /// Adds a component and updates the totals.
    pub fn with(mut self, name: &str, c0: S, c1: S) -> Self {
        self.c0 = self.c0 + c0;
        self.c1 = self.c1 + c1;
        self.breakdown.push(BoundComponent { name: name.to_owned(), c0, c1 });
        self
    }

    /// Multiplies every component by `w`.
    pub fn scaled(&self, w: S) -> Self {
        Self {
            c0: self.c0 * w,
            c1: self.c1 * w,
            constant_symbol: self.constant_symbol,
            breakdown: self
                .breakdown
                .iter()
                .map(|c| BoundComponent { name: c.name.clone(), c0: c.c0 * w, c1: c.c1 * w })
                .collect(),
        }
    }

    /// `c0 + c1·k`
    pub fn at(&self, k: S) -> S {
        self.c0 + self.c1 * k
    }

    /// Value with the free constant set to one.
    pub fn at_unit(&self) -> S {
        self.at(S::one())
    }

    /// Whether the components add up to the totals within `tol`.
    pub fn is_consistent(&self, tol: S) -> bool {
        let (c0, c1) = self.breakdown.iter().fold((S::zero(), S::zero()), |(a, b), c| (a + c.c0, b + c.c1));
        (c0 - self.c0).abs() <= tol && (c1 - self.c1).abs() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_accumulate() {
        let b = BoundValue::zero(Some(ConstantSymbol::A)).with("x", 0.0, 0.25).with("y", 1.0, 0.5);
        assert_eq!((b.c0, b.c1), (1.0, 0.75));
        assert!(b.is_consistent(1e-12));
        assert_eq!(b.at(2.0), 2.5);
        let s = b.scaled(2.0);
        assert_eq!((s.c0, s.c1), (2.0, 1.5));
        assert!(s.is_consistent(1e-12));
    }

    #[test]
    fn json_shape() {
        let b = BoundValue::coefficient("bentkus", ConstantSymbol::M, 0.5_f64);
        let v: serde_json::Value = serde_json::to_value(&b).unwrap();
        assert_eq!(v["constant_symbol"], "M");
        assert_eq!(v["breakdown"][0]["name"], "bentkus");
        assert_eq!(v["c1"], 0.5);
        let none = BoundValue::constant("raic", 1.0_f64);
        assert!(serde_json::to_value(&none).unwrap()["constant_symbol"].is_null());
        let back: BoundValue<f64> = serde_json::from_value(v).unwrap();
        assert_eq!(back, b);
    }
}
