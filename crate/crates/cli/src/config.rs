//! Experiment configuration.
//!
//! A config is a JSON document `{"instances": [...], "policy": {...}}`.
//! Every instance is checked while it is parsed, so problems are reported
//! with the line and column where serde stopped.

use std::collections::BTreeSet;
use std::path::Path;

use clt_bounds::barron::{FourierAtom, FourierAtomicSpec, L1SphereSearchConfig};
use clt_bounds::be_uniform::FavorableClass;
use clt_bounds::dist::{VectorSequenceSpec, VectorSummand};
use clt_bounds::level_sets::{Activation, FavorableSetInstance, FunctionSpec, HalfSpace, LinearCombo, Ridge};
use clt_bounds::verify::MIN_SAMPLES;
use clt_bounds::{Function, Matrix, Sequence, Univariate};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::CliError;

/// Product-form summands are enumerated; beyond this many atoms they are refused.
const MAX_PRODUCT_ATOMS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum BoundKind {
    #[serde(rename = "levelset")]
    LevelSet,
    #[serde(rename = "combo1")]
    Combo1,
    #[serde(rename = "combo2")]
    Combo2,
    #[serde(rename = "bentkus")]
    Bentkus,
    #[serde(rename = "raic")]
    Raic,
    #[serde(rename = "shevtsova")]
    Shevtsova,
    #[serde(rename = "relu")]
    Relu,
    #[serde(rename = "relu_sq")]
    ReluSq,
    #[serde(rename = "barron_s2")]
    BarronS2,
    #[serde(rename = "barron_s3")]
    BarronS3,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::LevelSet => "levelset",
            BoundKind::Combo1 => "combo1",
            BoundKind::Combo2 => "combo2",
            BoundKind::Bentkus => "bentkus",
            BoundKind::Raic => "raic",
            BoundKind::Shevtsova => "shevtsova",
            BoundKind::Relu => "relu",
            BoundKind::ReluSq => "relu_sq",
            BoundKind::BarronS2 => "barron_s2",
            BoundKind::BarronS3 => "barron_s3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
#[derive(Default)]
pub enum Verification {
    #[default]
    Exact,
    Mc { samples: usize },
    None,
}


/// Bound-specific inputs. Which fields are required depends on the selector.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub class: Option<FavorableClass>,
    pub classes: Option<Vec<FavorableClass>>,
    /// Σ|λ_j| for combo1; defaults to the function's own weights.
    pub c: Option<f64>,
    /// Common sup-norm of the combined functions for combo1.
    pub sup_f_norm: Option<f64>,
    pub gamma_star: Option<f64>,
    pub kappa: Option<f64>,
    pub symmetric_closure: Option<bool>,
    pub search: Option<L1SphereSearchConfig>,
}

impl Params {
    pub fn all_classes(&self) -> Vec<&FavorableClass> {
        self.class.iter().chain(self.classes.iter().flatten()).collect()
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PolicyConfig {
    pub constant_a: f64,
    pub constant_m: f64,
    pub z: f64,
    pub zero_tol: f64,
}

impl Default for PolicyConfig {
    fn default() -> Self {
        Self { constant_a: 1.0, constant_m: 1.0, z: 3.0, zero_tol: 1e-12 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, expecting = "a sequence object")]
struct SequenceRepr {
    d: usize,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    summands: Option<Vec<Value>>,
    #[serde(default)]
    coordinates: Option<Univariate>,
}

/// Either an explicit summand list (cycled up to `n` when `n` is given) or
/// `n` i.i.d. vectors with i.i.d. `coordinates`.
#[derive(Debug, Clone, Deserialize)]
#[serde(try_from = "SequenceRepr")]
pub struct SequenceConfig {
    repr: SequenceRepr,
    pub spec: Sequence,
}

impl TryFrom<SequenceRepr> for SequenceConfig {
    type Error = String;
    fn try_from(repr: SequenceRepr) -> Result<Self, String> {
        let spec = build_sequence(&repr)?;
        Ok(Self { repr, spec })
    }
}

fn build_sequence(repr: &SequenceRepr) -> Result<Sequence, String> {
    match (&repr.summands, &repr.coordinates) {
        (Some(list), None) => {
            if list.is_empty() {
                return Err("sequence needs at least one summand".into());
            }
            let n = repr.n.unwrap_or(list.len());
            let cycled: Vec<Value> = list.iter().cycle().take(n).cloned().collect();
            serde_json::from_value::<Sequence>(json!({ "d": repr.d, "summands": cycled })).map_err(|e| e.to_string())
        }
        (None, Some(coord)) => {
            let n = repr.n.ok_or("a sequence given by coordinates needs n")?;
            let summand = product_summand(coord, repr.d)?;
            VectorSequenceSpec::iid(summand, n).map_err(|e| e.to_string())
        }
        _ => Err("sequence needs exactly one of `summands` or `coordinates`".into()),
    }
}

fn product_summand(coord: &Univariate, d: usize) -> Result<VectorSummand<f64>, String> {
    if d == 0 {
        return Err("dimension must be positive".into());
    }
    let Some(atoms) = coord.atoms() else {
        return Ok(VectorSummand::Gaussian { covariance: Matrix::identity(d).scaled(coord.second_moment()) });
    };
    let total = (atoms.len() as f64).powi(d as i32);
    if total > MAX_PRODUCT_ATOMS as f64 {
        return Err(format!("product summand would have {total} atoms (limit {MAX_PRODUCT_ATOMS})"));
    }
    let mut out: Vec<(Vec<f64>, f64)> = vec![(Vec::with_capacity(d), 1.0)];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|(x, p)| {
                atoms.iter().map(move |&(v, q)| {
                    let mut y = x.clone();
                    y.push(v);
                    (y, p * q)
                })
            })
            .collect();
    }
    Ok(VectorSummand::Discrete { atoms: out })
}

impl SequenceConfig {
    pub fn with_n(&self, n: usize) -> Result<Self, String> {
        let mut repr = self.repr.clone();
        repr.n = Some(n);
        Self::try_from(repr)
    }

    pub fn with_d(&self, d: usize) -> Result<Self, String> {
        if self.repr.coordinates.is_none() {
            return Err("varying d needs a sequence given by `coordinates`".into());
        }
        let mut repr = self.repr.clone();
        repr.d = d;
        Self::try_from(repr)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, expecting = "an instance object")]
struct InstanceRepr {
    id: String,
    sequence: SequenceConfig,
    function: Function,
    bound: BoundKind,
    #[serde(default)]
    t: Option<f64>,
    #[serde(default)]
    verification: Verification,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    params: Params,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(try_from = "InstanceRepr")]
pub struct InstanceConfig {
    pub id: String,
    pub sequence: SequenceConfig,
    pub function: Function,
    pub bound: BoundKind,
    pub verification: Verification,
    pub seed: Option<u64>,
    pub params: Params,
}

impl TryFrom<InstanceRepr> for InstanceConfig {
    type Error = String;
    fn try_from(r: InstanceRepr) -> Result<Self, String> {
        let function = match r.t {
            Some(t) => with_threshold(&r.function, t)?,
            None => r.function,
        };
        let inst = Self {
            id: r.id,
            sequence: r.sequence,
            function,
            bound: r.bound,
            verification: r.verification,
            seed: r.seed,
            params: r.params,
        };
        inst.check().map_err(|e| format!("instance `{}`: {e}", inst.id))?;
        Ok(inst)
    }
}

impl InstanceConfig {
    pub fn n(&self) -> usize {
        self.sequence.spec.len()
    }

    pub fn d(&self) -> usize {
        self.sequence.spec.dim()
    }

    /// Ridge threshold or half-space offset, when the function has one.
    pub fn t(&self) -> Option<f64> {
        threshold(&self.function)
    }

    fn check(&self) -> Result<(), String> {
        if self.id.is_empty() || !self.id.chars().all(|c| c.is_ascii_alphanumeric() || "_-.".contains(c)) {
            return Err("id must be non-empty and use only letters, digits, `_`, `-` and `.`".into());
        }
        if let Some(d) = self.function.dim() {
            if d != self.d() {
                return Err(format!("function has dimension {d} but the sequence has dimension {}", self.d()));
            }
        }
        for class in self.params.all_classes() {
            class.validate().map_err(|e| e.to_string())?;
        }
        match &self.verification {
            Verification::Mc { samples } => {
                if *samples < MIN_SAMPLES {
                    return Err(format!("mc verification needs at least {MIN_SAMPLES} samples"));
                }
                if self.seed.is_none() {
                    return Err("mc verification needs a seed".into());
                }
            }
            Verification::Exact | Verification::None => {}
        }
        let f = &self.function;
        let bounded = || f.sup_norm().ok_or_else(|| format!("{} needs a bounded function", self.bound.name()));
        let need_class = || self.params.class.as_ref().ok_or_else(|| format!("{} needs params.class", self.bound.name()));
        match self.bound {
            BoundKind::LevelSet => {
                bounded()?;
                if !f.is_symbolic() || f.ridge_direction().is_none() {
                    return Err("levelset needs a ridge-type function with symbolic level sets".into());
                }
            }
            BoundKind::Combo1 => {
                need_class()?;
                if self.params.sup_f_norm.is_none() {
                    combo_parts(f)?;
                }
            }
            BoundKind::Combo2 => {
                bounded()?;
                if self.params.classes.as_ref().is_none_or(|c| c.is_empty()) {
                    return Err("combo2 needs a non-empty params.classes".into());
                }
            }
            BoundKind::Bentkus => {
                bounded()?;
                need_class()?;
            }
            BoundKind::Raic => {
                bounded()?;
                if self.params.gamma_star.is_none() {
                    return Err("raic needs params.gamma_star".into());
                }
            }
            BoundKind::Shevtsova => {
                if !matches!(f, FunctionSpec::Indicator(FavorableSetInstance::HalfSpace { .. })) {
                    return Err("shevtsova needs a half-space indicator".into());
                }
            }
            BoundKind::Relu | BoundKind::ReluSq => {
                let want = if self.bound == BoundKind::Relu { Activation::Relu } else { Activation::ReluSq };
                if !matches!(f, FunctionSpec::Ridge(r) if r.activation == want) {
                    return Err(format!("{} needs a ridge function with that activation", self.bound.name()));
                }
            }
            BoundKind::BarronS2 | BoundKind::BarronS3 => {
                if !matches!(f, FunctionSpec::FourierAtomic(_)) {
                    return Err(format!("{} needs a fourier_atomic function", self.bound.name()));
                }
            }
        }
        Ok(())
    }

    pub fn with_n(&self, n: usize) -> Result<Self, String> {
        let mut next = self.clone();
        next.sequence = self.sequence.with_n(n)?;
        next.rechecked()
    }

    /// Re-embeds the problem in dimension d: the sequence is rebuilt, the
    /// favorable classes are re-dimensioned and the function's vectors are
    /// padded with zeros or truncated.
    pub fn with_d(&self, d: usize) -> Result<Self, String> {
        let mut next = self.clone();
        next.sequence = self.sequence.with_d(d)?;
        next.function = resize_function(&self.function, d)?;
        next.params.class = self.params.class.as_ref().map(|c| c.with_dim(d));
        next.params.classes = self.params.classes.as_ref().map(|cs| cs.iter().map(|c| c.with_dim(d)).collect());
        next.rechecked()
    }

    pub fn with_t(&self, t: f64) -> Result<Self, String> {
        let mut next = self.clone();
        next.function = with_threshold(&self.function, t)?;
        next.rechecked()
    }

    fn rechecked(self) -> Result<Self, String> {
        self.check().map_err(|e| format!("instance `{}`: {e}", self.id))?;
        Ok(self)
    }
}

/// (Σ|λ_j|, max_j ‖f_j‖∞) of a function read as a linear combination.
pub fn combo_parts(f: &Function) -> Result<(f64, f64), String> {
    let unbounded = || "combo1 needs bounded terms (or params.sup_f_norm)".to_string();
    match f {
        FunctionSpec::LinearCombo(c) => {
            let mut sup: f64 = 0.0;
            for (_, g) in c.terms() {
                sup = sup.max(g.sup_norm().ok_or_else(unbounded)?);
            }
            Ok((c.abs_sum(), sup))
        }
        _ => Ok((1.0, f.sup_norm().ok_or_else(unbounded)?)),
    }
}

fn threshold(f: &Function) -> Option<f64> {
    match f {
        FunctionSpec::Ridge(r) => Some(r.threshold),
        FunctionSpec::Indicator(FavorableSetInstance::HalfSpace { b, .. }) => Some(*b),
        _ => None,
    }
}

fn with_threshold(f: &Function, t: f64) -> Result<Function, String> {
    if !t.is_finite() {
        return Err(format!("t = {t} must be finite"));
    }
    match f {
        FunctionSpec::Ridge(r) => Ok(FunctionSpec::Ridge(Ridge { threshold: t, ..r.clone() })),
        FunctionSpec::Indicator(FavorableSetInstance::HalfSpace { a, .. }) => {
            Ok(FunctionSpec::Indicator(FavorableSetInstance::HalfSpace { a: a.clone(), b: t }))
        }
        _ => Err("t applies only to ridge functions and half-space indicators".into()),
    }
}

fn pad(v: &[f64], d: usize) -> Vec<f64> {
    let mut out = v.to_vec();
    out.resize(d, 0.0);
    out
}

fn resize_function(f: &Function, d: usize) -> Result<Function, String> {
    let out = match f {
        FunctionSpec::Indicator(set) => FunctionSpec::Indicator(match set {
            FavorableSetInstance::HalfSpace { a, b } => FavorableSetInstance::HalfSpace { a: pad(a, d), b: *b },
            FavorableSetInstance::Ball { center, radius } => FavorableSetInstance::Ball { center: pad(center, d), radius: *radius },
            FavorableSetInstance::ConvexPolytope { faces } => FavorableSetInstance::ConvexPolytope {
                faces: faces.iter().map(|h| HalfSpace { a: pad(&h.a, d), b: h.b }).collect(),
            },
        }),
        FunctionSpec::Ridge(r) => FunctionSpec::Ridge(Ridge { direction: pad(&r.direction, d), ..r.clone() }),
        FunctionSpec::LinearCombo(c) => FunctionSpec::LinearCombo(
            LinearCombo::new(
                c.terms().iter().map(|(w, g)| Ok((*w, resize_function(g, d)?))).collect::<Result<_, String>>()?,
            )
            .map_err(|e| e.to_string())?,
        ),
        FunctionSpec::FourierAtomic(s) => FunctionSpec::FourierAtomic(
            FourierAtomicSpec::new(s.atoms.iter().map(|a| FourierAtom::new(pad(&a.omega, d), a.re, a.im)).collect())
                .map_err(|e| e.to_string())?,
        ),
        FunctionSpec::Composed { outer, inner } => {
            FunctionSpec::Composed { outer: outer.clone(), inner: Box::new(resize_function(inner, d)?) }
        }
        FunctionSpec::Scaled { factor, inner } => FunctionSpec::Scaled { factor: *factor, inner: Box::new(resize_function(inner, d)?) },
        FunctionSpec::Blackbox(_) => return Err("black-box functions cannot be resized".into()),
    };
    out.validate().map_err(|e| format!("function in dimension {d}: {e}"))?;
    Ok(out)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, expecting = "a config object with `instances`")]
struct ConfigRepr {
    instances: Vec<InstanceConfig>,
    #[serde(default)]
    policy: PolicyConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(try_from = "ConfigRepr")]
pub struct ExperimentConfig {
    pub instances: Vec<InstanceConfig>,
    pub policy: PolicyConfig,
}

impl TryFrom<ConfigRepr> for ExperimentConfig {
    type Error = String;
    fn try_from(r: ConfigRepr) -> Result<Self, String> {
        if r.instances.is_empty() {
            return Err("config has no instances".into());
        }
        let mut seen = BTreeSet::new();
        for inst in &r.instances {
            if !seen.insert(inst.id.as_str()) {
                return Err(format!("duplicate instance id `{}`", inst.id));
            }
        }
        let p = r.policy;
        if ![p.constant_a, p.constant_m, p.z, p.zero_tol].iter().all(|v| v.is_finite() && *v >= 0.0) {
            return Err("policy values must be finite and non-negative".into());
        }
        Ok(Self { instances: r.instances, policy: p })
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Reads and parses a config; diagnostics are prefixed `path:line:column:`.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| {
            let msg = e.to_string();
            // serde_json appends " at line L column C"; move the location up front.
            let body = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(head, _)| head);
            CliError::Config(format!("{}:{}:{}: {body}", path.display(), e.line(), e.column()))
        })
    }
}
