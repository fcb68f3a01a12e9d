use std::fmt;
use std::sync::Arc;

use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::barron::FourierAtomicSpec;
use crate::error::{Error, Result};
use crate::linalg::{dot, norm2};
use crate::Scalar;

use super::sets::{FavorableSetInstance, SetDescriptor};

/// Where the set {u : g(u) ⋈ t} starts for a non-decreasing g on the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cut<S> {
    /// Every u qualifies.
    All,
    /// u ≥ c (closed cut) or u > c (strict cut).
    From(S),
    /// No u qualifies.
    Nothing,
}

/// Piecewise-linear non-decreasing function through the given points,
/// constant beyond the first and last input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr<S>", into = "TableRepr<S>")]
#[serde(bound = "S: Scalar")]
pub struct MonotoneTable<S: Scalar> {
    points: Vec<(S, S)>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct TableRepr<S> {
    points: Vec<(S, S)>,
}

impl<S: Scalar> TryFrom<TableRepr<S>> for MonotoneTable<S> {
    type Error = Error;
    fn try_from(r: TableRepr<S>) -> Result<Self> {
        Self::new(r.points)
    }
}

impl<S: Scalar> From<MonotoneTable<S>> for TableRepr<S> {
    fn from(t: MonotoneTable<S>) -> Self {
        TableRepr { points: t.points }
    }
}

impl<S: Scalar> MonotoneTable<S> {
    /// Inputs must be strictly increasing and outputs non-decreasing.
    pub fn new(points: Vec<(S, S)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("monotone table is empty".into()));
        }
        if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::InvalidArgument("monotone table has non-finite entries".into()));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidArgument("monotone table inputs must be strictly increasing".into()));
            }
            if w[1].1 < w[0].1 {
                return Err(Error::InvalidArgument(format!(
                    "monotone table decreases from {} to {} on [{}, {}]",
                    w[0].1, w[1].1, w[0].0, w[1].0
                )));
            }
        }
        Ok(Self { points })
    }

    /// The table [(0, 0), (cap, cap)]: ReLU capped at `cap`.
    pub fn capped_relu(cap: S) -> Result<Self> {
        Self::new(vec![(S::zero(), S::zero()), (cap, cap)])
    }

    pub fn points(&self) -> &[(S, S)] {
        &self.points
    }

    pub fn min_value(&self) -> S {
        self.points[0].1
    }

    pub fn max_value(&self) -> S {
        self.points[self.points.len() - 1].1
    }

    pub fn eval(&self, u: S) -> S {
        let p = &self.points;
        if u <= p[0].0 {
            return p[0].1;
        }
        let k = p.partition_point(|(x, _)| *x < u);
        if k == p.len() {
            return p[k - 1].1;
        }
        let (x0, y0) = p[k - 1];
        let (x1, y1) = p[k];
        if u == x1 {
            return y1;
        }
        y0 + (y1 - y0) * ((u - x0) / (x1 - x0))
    }

    fn segment_inverse(&self, k: usize, t: S) -> S {
        let (x0, y0) = self.points[k];
        let (x1, y1) = self.points[k + 1];
        (x0 + (x1 - x0) * ((t - y0) / (y1 - y0))).min(x1)
    }

    /// inf{u : g(u) ≥ t}
    pub fn cut_ge(&self, t: S) -> Cut<S> {
        if t <= self.min_value() {
            return Cut::All;
        }
        if t > self.max_value() {
            return Cut::Nothing;
        }
        // First knot with output ≥ t; the crossing is in the segment before it.
        let k = self.points.partition_point(|(_, y)| *y < t);
        Cut::From(self.segment_inverse(k - 1, t))
    }

    /// sup{u : g(u) ≤ t}, so that {g > t} = {u > c}.
    pub fn cut_gt(&self, t: S) -> Cut<S> {
        if t < self.min_value() {
            return Cut::All;
        }
        if t >= self.max_value() {
            return Cut::Nothing;
        }
        // Last knot with output ≤ t; the crossing is in the segment after it.
        let k = self.points.partition_point(|(_, y)| *y <= t) - 1;
        Cut::From(self.segment_inverse(k, t))
    }
}

/// Activation of a ridge function x ↦ σ(aᵀx − s).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound = "S: Scalar")]
pub enum Activation<S: Scalar> {
    Relu,
    ReluSq,
    MonotoneTable(MonotoneTable<S>),
}

impl<S: Scalar> Activation<S> {
    pub fn eval(&self, u: S) -> S {
        match self {
            Activation::Relu => u.max(S::zero()),
            Activation::ReluSq => {
                let r = u.max(S::zero());
                r * r
            }
            Activation::MonotoneTable(t) => t.eval(u),
        }
    }

    /// Generalized inverse for the closed level set.
    pub fn cut_ge(&self, t: S) -> Cut<S> {
        match self {
            Activation::Relu if t <= S::zero() => Cut::All,
            Activation::Relu => Cut::From(t),
            Activation::ReluSq if t <= S::zero() => Cut::All,
            Activation::ReluSq => Cut::From(t.sqrt()),
            Activation::MonotoneTable(g) => g.cut_ge(t),
        }
    }

    /// Generalized inverse for the strict level set.
    pub fn cut_gt(&self, t: S) -> Cut<S> {
        match self {
            Activation::Relu | Activation::ReluSq if t < S::zero() => Cut::All,
            Activation::Relu => Cut::From(t),
            Activation::ReluSq => Cut::From(t.sqrt()),
            Activation::MonotoneTable(g) => g.cut_gt(t),
        }
    }

    /// Inputs where σ is not smooth.
    fn kinks(&self) -> Vec<S> {
        match self {
            Activation::Relu | Activation::ReluSq => vec![S::zero()],
            Activation::MonotoneTable(g) => g.points.iter().map(|p| p.0).collect(),
        }
    }

    /// Values σ takes on a set of positive length.
    fn flat_values(&self) -> Vec<S> {
        match self {
            Activation::Relu | Activation::ReluSq => vec![S::zero()],
            Activation::MonotoneTable(g) => g.points.iter().map(|p| p.1).collect(),
        }
    }

    fn sup_norm(&self) -> Option<S> {
        match self {
            Activation::Relu | Activation::ReluSq => None,
            Activation::MonotoneTable(g) => Some(g.min_value().abs().max(g.max_value().abs())),
        }
    }
}

/// x ↦ σ(aᵀx − threshold)
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct Ridge<S: Scalar> {
    pub activation: Activation<S>,
    pub direction: Vec<S>,
    pub threshold: S,
}

/// Programmatic bounded function. Every evaluation is checked against the
/// declared sup-norm.
#[derive(Clone)]
pub struct Blackbox<S> {
    pub dim: usize,
    pub sup_norm: S,
    eval: Arc<dyn Fn(&[S]) -> S + Send + Sync>,
}

impl<S: Scalar> Blackbox<S> {
    pub fn new(dim: usize, sup_norm: S, eval: impl Fn(&[S]) -> S + Send + Sync + 'static) -> Result<Self> {
        if !(sup_norm > S::zero()) || !sup_norm.is_finite() {
            return Err(Error::InvalidArgument(format!("sup-norm bound {sup_norm} must be positive")));
        }
        Ok(Self { dim, sup_norm, eval: Arc::new(eval) })
    }

    pub fn eval(&self, x: &[S]) -> Result<S> {
        let v = (self.eval)(x);
        if !(v.abs() <= self.sup_norm) {
            return Err(Error::SupNormViolated { value: v.as_f64(), bound: self.sup_norm.as_f64() });
        }
        Ok(v)
    }
}

impl<S: fmt::Debug> fmt::Debug for Blackbox<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Blackbox").field("dim", &self.dim).field("sup_norm", &self.sup_norm).finish_non_exhaustive()
    }
}

/// Σ_j λ_j f_j with Σ|λ_j| cached.
#[derive(Debug, Clone)]
pub struct LinearCombo<S: Scalar> {
    terms: Vec<(S, FunctionSpec<S>)>,
    abs_sum: S,
}

impl<S: Scalar> LinearCombo<S> {
    pub fn new(terms: Vec<(S, FunctionSpec<S>)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("linear combination has no terms".into()));
        }
        if terms.iter().any(|(w, _)| !w.is_finite()) {
            return Err(Error::InvalidArgument("linear combination weight is not finite".into()));
        }
        let abs_sum = terms.iter().map(|(w, _)| w.abs()).sum();
        Ok(Self { terms, abs_sum })
    }

    pub fn terms(&self) -> &[(S, FunctionSpec<S>)] {
        &self.terms
    }

    /// Σ|λ_j|
    pub fn abs_sum(&self) -> S {
        self.abs_sum
    }
}

/// A test function.
#[derive(Debug, Clone)]
pub enum FunctionSpec<S: Scalar> {
    Indicator(FavorableSetInstance<S>),
    Ridge(Ridge<S>),
    Blackbox(Blackbox<S>),
    LinearCombo(LinearCombo<S>),
    FourierAtomic(FourierAtomicSpec<S>),
    /// g ∘ f for a monotone table g.
    Composed { outer: MonotoneTable<S>, inner: Box<FunctionSpec<S>> },
    /// c·f with c > 0.
    Scaled { factor: S, inner: Box<FunctionSpec<S>> },
}

impl<S: Scalar> FunctionSpec<S> {
    pub fn indicator(set: FavorableSetInstance<S>) -> Result<Self> {
        set.validate()?;
        Ok(FunctionSpec::Indicator(set))
    }

    pub fn ridge(activation: Activation<S>, direction: Vec<S>, threshold: S) -> Result<Self> {
        if direction.is_empty() || direction.iter().any(|x| !x.is_finite()) || !(norm2(&direction) > S::zero()) {
            return Err(Error::InvalidArgument("ridge direction must be finite and non-zero".into()));
        }
        if !threshold.is_finite() {
            return Err(Error::InvalidArgument("ridge threshold must be finite".into()));
        }
        Ok(FunctionSpec::Ridge(Ridge { activation, direction, threshold }))
    }

    pub fn scaled(factor: S, inner: FunctionSpec<S>) -> Result<Self> {
        if !(factor > S::zero()) || !factor.is_finite() {
            return Err(Error::InvalidArgument(format!("scale factor {factor} must be positive")));
        }
        Ok(FunctionSpec::Scaled { factor, inner: Box::new(inner) })
    }

    /// Checks structural invariants recursively.
    pub fn validate(&self) -> Result<()> {
        match self {
            FunctionSpec::Indicator(set) => set.validate(),
            FunctionSpec::Ridge(r) => Self::ridge(r.activation.clone(), r.direction.clone(), r.threshold).map(|_| ()),
            FunctionSpec::Blackbox(_) => Ok(()),
            FunctionSpec::LinearCombo(c) => {
                let d = self.dim();
                for (_, f) in c.terms() {
                    f.validate()?;
                    if let (Some(d), Some(e)) = (d, f.dim()) {
                        if d != e {
                            return Err(Error::DimensionMismatch { expected: d, found: e });
                        }
                    }
                }
                Ok(())
            }
            FunctionSpec::FourierAtomic(f) => f.validate(),
            FunctionSpec::Composed { inner, .. } => inner.validate(),
            FunctionSpec::Scaled { factor, inner } => Self::scaled(*factor, (**inner).clone()).and_then(|_| inner.validate()),
        }
    }

    /// Input dimension, when determined by the spec.
    pub fn dim(&self) -> Option<usize> {
        match self {
            FunctionSpec::Indicator(set) => Some(set.dim()),
            FunctionSpec::Ridge(r) => Some(r.direction.len()),
            FunctionSpec::Blackbox(b) => Some(b.dim),
            FunctionSpec::LinearCombo(c) => c.terms().iter().find_map(|(_, f)| f.dim()),
            FunctionSpec::FourierAtomic(f) => f.dim(),
            FunctionSpec::Composed { inner, .. } | FunctionSpec::Scaled { inner, .. } => inner.dim(),
        }
    }

    pub fn eval(&self, x: &[S]) -> Result<S> {
        if let Some(d) = self.dim() {
            if d != x.len() {
                return Err(Error::DimensionMismatch { expected: d, found: x.len() });
            }
        }
        Ok(match self {
            FunctionSpec::Indicator(set) => Self::bool(set.contains(x)),
            FunctionSpec::Ridge(r) => r.activation.eval(dot(&r.direction, x) - r.threshold),
            FunctionSpec::Blackbox(b) => b.eval(x)?,
            FunctionSpec::LinearCombo(c) => {
                let mut acc = S::zero();
                for (w, f) in c.terms() {
                    acc = acc + *w * f.eval(x)?;
                }
                acc
            }
            FunctionSpec::FourierAtomic(f) => f.eval(x),
            FunctionSpec::Composed { outer, inner } => outer.eval(inner.eval(x)?),
            FunctionSpec::Scaled { factor, inner } => *factor * inner.eval(x)?,
        })
    }

    fn bool(b: bool) -> S {
        if b {
            S::one()
        } else {
            S::zero()
        }
    }

    /// ‖f‖∞ when it is known from the spec (an upper bound for compositions
    /// and combinations).
    pub fn sup_norm(&self) -> Option<S> {
        match self {
            FunctionSpec::Indicator(_) => Some(S::one()),
            FunctionSpec::Ridge(r) => r.activation.sup_norm(),
            FunctionSpec::Blackbox(b) => Some(b.sup_norm),
            FunctionSpec::LinearCombo(c) => {
                c.terms().iter().try_fold(S::zero(), |acc, (w, f)| f.sup_norm().map(|m| acc + w.abs() * m))
            }
            FunctionSpec::FourierAtomic(f) => Some(f.amplitude_sum()),
            FunctionSpec::Composed { outer, .. } => Some(outer.min_value().abs().max(outer.max_value().abs())),
            FunctionSpec::Scaled { factor, inner } => inner.sup_norm().map(|m| *factor * m),
        }
    }

    /// Whether the level sets have a symbolic form.
    pub fn is_symbolic(&self) -> bool {
        match self {
            FunctionSpec::Indicator(_) | FunctionSpec::Ridge(_) => true,
            FunctionSpec::Composed { inner, .. } | FunctionSpec::Scaled { inner, .. } => inner.is_symbolic(),
            _ => false,
        }
    }

    /// {x : f(x) ≥ t}
    pub fn upper_level_set(&self, t: S) -> Result<SetDescriptor<S>> {
        self.level_set(t, false)
    }

    /// {x : f(x) > t}; lower level sets are its complements.
    pub fn strict_upper_level_set(&self, t: S) -> Result<SetDescriptor<S>> {
        self.level_set(t, true)
    }

    fn level_set(&self, t: S, strict: bool) -> Result<SetDescriptor<S>> {
        if t.is_nan() {
            return Err(Error::InvalidArgument("level is NaN".into()));
        }
        match self {
            FunctionSpec::Indicator(set) => {
                let (lo, hi) = if strict { (t < S::zero(), t >= S::one()) } else { (t <= S::zero(), t > S::one()) };
                Ok(if lo {
                    SetDescriptor::Full
                } else if hi {
                    SetDescriptor::Empty
                } else {
                    SetDescriptor::Set { set: set.clone() }
                })
            }
            FunctionSpec::Ridge(r) => {
                let cut = if strict { r.activation.cut_gt(t) } else { r.activation.cut_ge(t) };
                Ok(match cut {
                    Cut::All => SetDescriptor::Full,
                    Cut::Nothing => SetDescriptor::Empty,
                    Cut::From(u) => SetDescriptor::HalfSpace { a: r.direction.clone(), b: r.threshold + u, closed: !strict },
                })
            }
            FunctionSpec::Composed { outer, inner } => {
                match if strict { outer.cut_gt(t) } else { outer.cut_ge(t) } {
                    Cut::All => Ok(SetDescriptor::Full),
                    Cut::Nothing => Ok(SetDescriptor::Empty),
                    Cut::From(y) => inner.level_set(y, strict),
                }
            }
            FunctionSpec::Scaled { factor, inner } => inner.level_set(t / *factor, strict),
            _ => Err(Error::Unsupported("level sets of this function have no symbolic form".into())),
        }
    }

    /// Direction a such that f(x) depends on x only through aᵀx. In one
    /// dimension every function qualifies with a = 1.
    pub fn ridge_direction(&self) -> Option<Vec<S>> {
        if self.dim() == Some(1) && !matches!(self, FunctionSpec::LinearCombo(_) | FunctionSpec::FourierAtomic(_)) {
            return Some(vec![S::one()]);
        }
        match self {
            FunctionSpec::Indicator(FavorableSetInstance::HalfSpace { a, .. }) => Some(a.clone()),
            FunctionSpec::Ridge(r) => Some(r.direction.clone()),
            FunctionSpec::Composed { inner, .. } | FunctionSpec::Scaled { inner, .. } => inner.ridge_direction(),
            _ => None,
        }
    }

    /// f as a function of u = aᵀx for the direction from [`Self::ridge_direction`].
    pub fn eval_projected(&self, u: S) -> Result<S> {
        match self {
            FunctionSpec::Indicator(FavorableSetInstance::HalfSpace { b, .. }) if self.dim() != Some(1) => Ok(Self::bool(u >= *b)),
            FunctionSpec::Ridge(r) if self.dim() != Some(1) => Ok(r.activation.eval(u - r.threshold)),
            FunctionSpec::Composed { outer, inner } => Ok(outer.eval(inner.eval_projected(u)?)),
            FunctionSpec::Scaled { factor, inner } => Ok(*factor * inner.eval_projected(u)?),
            _ if self.dim() == Some(1) => self.eval(&[u]),
            _ => Err(Error::Unsupported("function is not a ridge function".into())),
        }
    }

    /// Points of the u-line where the projected profile is not smooth.
    pub fn projected_breakpoints(&self) -> Vec<S> {
        let mut out = match self {
            FunctionSpec::Indicator(set) => match set {
                FavorableSetInstance::HalfSpace { a, b } if a.len() > 1 => vec![*b],
                _ => set.as_interval().map(|(lo, hi)| vec![lo, hi]).unwrap_or_default(),
            },
            FunctionSpec::Ridge(r) => {
                let scale = if r.direction.len() == 1 { r.direction[0] } else { S::one() };
                r.activation.kinks().into_iter().map(|k| (k + r.threshold) / scale).collect()
            }
            FunctionSpec::Composed { outer, inner } => {
                let mut pts = inner.projected_breakpoints();
                for &(knot, _) in outer.points() {
                    for strict in [false, true] {
                        if let Ok(SetDescriptor::HalfSpace { a, b, .. }) = inner.level_set(knot, strict) {
                            pts.push(if a.len() == 1 { b / a[0] } else { b });
                        }
                    }
                }
                pts
            }
            FunctionSpec::Scaled { inner, .. } => inner.projected_breakpoints(),
            _ => Vec::new(),
        };
        out.retain(|x| x.is_finite());
        out.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        out.dedup();
        out
    }

    /// Values that f may take with positive Gaussian probability. A superset
    /// is harmless.
    pub fn flat_values(&self) -> Vec<S> {
        let mut out = match self {
            FunctionSpec::Indicator(_) => vec![S::zero(), S::one()],
            FunctionSpec::Ridge(r) => r.activation.flat_values(),
            FunctionSpec::Composed { outer, inner } => {
                let mut v: Vec<S> = outer.points().iter().map(|p| p.1).collect();
                v.extend(inner.flat_values().into_iter().map(|y| outer.eval(y)));
                v
            }
            FunctionSpec::Scaled { factor, inner } => inner.flat_values().into_iter().map(|y| *factor * y).collect(),
            _ => Vec::new(),
        };
        out.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        out.dedup();
        out
    }
}

/// g ∘ f for symbolic f; the level sets of the result are level sets of f.
pub fn monotone_compose<S: Scalar>(f: &FunctionSpec<S>, g: MonotoneTable<S>) -> Result<FunctionSpec<S>> {
    if !f.is_symbolic() {
        return Err(Error::Unsupported("monotone composition needs a function with symbolic level sets".into()));
    }
    Ok(FunctionSpec::Composed { outer: g, inner: Box::new(f.clone()) })
}

/// f/‖f‖∞. Nested positive scalings are folded, so 5·1_A normalizes to 1_A.
pub fn normalize<S: Scalar>(f: &FunctionSpec<S>) -> Result<FunctionSpec<S>> {
    let m = f.sup_norm().ok_or_else(|| Error::Unsupported("sup-norm of the function is not known".into()))?;
    if !(m > S::zero()) {
        return Err(Error::InvalidArgument("cannot normalize a function with zero sup-norm".into()));
    }
    let (factor, inner) = match f {
        FunctionSpec::Scaled { factor, inner } => (*factor / m, (**inner).clone()),
        other => (S::one() / m, other.clone()),
    };
    if factor == S::one() {
        Ok(inner)
    } else {
        FunctionSpec::scaled(factor, inner)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct TermRepr<S: Scalar> {
    weight: S,
    function: FunctionRepr<S>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound = "S: Scalar")]
enum FunctionRepr<S: Scalar> {
    Indicator { set: FavorableSetInstance<S> },
    Ridge(Ridge<S>),
    LinearCombo { terms: Vec<TermRepr<S>> },
    FourierAtomic(FourierAtomicSpec<S>),
    Composed { outer: MonotoneTable<S>, inner: Box<FunctionRepr<S>> },
    Scaled { factor: S, inner: Box<FunctionRepr<S>> },
}

impl<S: Scalar> FunctionRepr<S> {
    fn from_spec(f: &FunctionSpec<S>) -> Result<Self> {
        Ok(match f {
            FunctionSpec::Indicator(set) => FunctionRepr::Indicator { set: set.clone() },
            FunctionSpec::Ridge(r) => FunctionRepr::Ridge(r.clone()),
            FunctionSpec::Blackbox(_) => return Err(Error::Unsupported("black-box functions are not serializable".into())),
            FunctionSpec::LinearCombo(c) => FunctionRepr::LinearCombo {
                terms: c
                    .terms()
                    .iter()
                    .map(|(w, f)| Ok(TermRepr { weight: *w, function: Self::from_spec(f)? }))
                    .collect::<Result<_>>()?,
            },
            FunctionSpec::FourierAtomic(s) => FunctionRepr::FourierAtomic(s.clone()),
            FunctionSpec::Composed { outer, inner } => {
                FunctionRepr::Composed { outer: outer.clone(), inner: Box::new(Self::from_spec(inner)?) }
            }
            FunctionSpec::Scaled { factor, inner } => FunctionRepr::Scaled { factor: *factor, inner: Box::new(Self::from_spec(inner)?) },
        })
    }

    fn into_spec(self) -> Result<FunctionSpec<S>> {
        let f = match self {
            FunctionRepr::Indicator { set } => FunctionSpec::Indicator(set),
            FunctionRepr::Ridge(r) => FunctionSpec::Ridge(r),
            FunctionRepr::LinearCombo { terms } => FunctionSpec::LinearCombo(LinearCombo::new(
                terms.into_iter().map(|t| Ok((t.weight, t.function.into_spec()?))).collect::<Result<_>>()?,
            )?),
            FunctionRepr::FourierAtomic(s) => FunctionSpec::FourierAtomic(s),
            FunctionRepr::Composed { outer, inner } => FunctionSpec::Composed { outer, inner: Box::new(inner.into_spec()?) },
            FunctionRepr::Scaled { factor, inner } => FunctionSpec::Scaled { factor, inner: Box::new(inner.into_spec()?) },
        };
        f.validate()?;
        Ok(f)
    }
}

impl<S: Scalar> Serialize for FunctionSpec<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        FunctionRepr::from_spec(self).map_err(Z::Error::custom)?.serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for FunctionSpec<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        FunctionRepr::deserialize(deserializer)?.into_spec().map_err(D::Error::custom)
    }
}
