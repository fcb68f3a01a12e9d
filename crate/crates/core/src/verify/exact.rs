use num_complex::Complex;

use crate::barron::FourierAtomicSpec;
use crate::dist::{normalize_atoms, MomentSummary, UnivariateSpec, VectorSequenceSpec, VectorSummand};
use crate::error::{Error, Result};
use crate::level_sets::{FavorableSetInstance, FunctionSpec, RealLaw, SetDescriptor};
use crate::linalg::dot;
use crate::quadrature::{gaussian_expectation, QuadratureConfig};
use crate::scalar::CompensatedSum;
use crate::Scalar;

/// Largest support a convolution may produce.
pub const MAX_SUPPORT: usize = 10_000_000;

/// Relative tolerance under which convolution atoms are merged.
pub const MERGE_TOL: f64 = 1e-12;

/// A finitely supported law on the line with sorted, distinct values.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactLaw<S> {
    support: Vec<(S, S)>,
    /// tails[i] = Σ_{j ≥ i} p_j, with tails[len] = 0.
    tails: Vec<S>,
}

impl<S: Scalar> ExactLaw<S> {
    pub fn new(support: Vec<(S, S)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        for w in support.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidDistribution("support values must be strictly increasing".into()));
            }
        }
        if support.iter().any(|(v, p)| !v.is_finite() || !(*p > S::zero())) {
            return Err(Error::InvalidDistribution("support needs finite values and positive probabilities".into()));
        }
        let total = support.iter().map(|a| a.1).collect::<CompensatedSum<S>>().value();
        if (total - S::one()).abs() > S::tol(1e-10) {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        Ok(Self::from_sorted(support))
    }

    fn from_sorted(support: Vec<(S, S)>) -> Self {
        let mut tails = vec![S::zero(); support.len() + 1];
        let mut acc = CompensatedSum::new();
        for i in (0..support.len()).rev() {
            acc.add(support[i].1);
            tails[i] = acc.value();
        }
        Self { support, tails }
    }

    pub fn point(v: S) -> Self {
        Self::from_sorted(vec![(v, S::one())])
    }

    pub fn support(&self) -> &[(S, S)] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn mean(&self) -> S {
        exact_expectation(self, |v| v)
    }

    pub fn variance(&self) -> S {
        let m = self.mean();
        exact_expectation(self, |v| (v - m) * (v - m))
    }

    /// Law of g(Y), merging values within the convolution tolerance.
    pub fn map(&self, g: impl Fn(S) -> Result<S>) -> Result<Self> {
        let mapped = self.support.iter().map(|(v, p)| Ok((g(*v)?, *p))).collect::<Result<Vec<_>>>()?;
        if mapped.iter().any(|(v, _)| !v.is_finite()) {
            return Err(Error::Numeric("mapped value is not finite".into()));
        }
        Ok(Self::from_sorted(merge(mapped)))
    }
}

fn merge<S: Scalar>(atoms: Vec<(S, S)>) -> Vec<(S, S)> {
    let scale = atoms.iter().fold(S::one(), |m, a| m.max(a.0.abs()));
    normalize_atoms(atoms, S::tol(MERGE_TOL) * scale)
}

impl<S: Scalar> RealLaw<S> for ExactLaw<S> {
    fn prob_ge(&self, t: S) -> Result<S> {
        Ok(self.tails[self.support.partition_point(|a| a.0 < t)])
    }

    fn prob_gt(&self, t: S) -> Result<S> {
        Ok(self.tails[self.support.partition_point(|a| a.0 <= t)])
    }

    fn atoms(&self) -> Vec<S> {
        self.support.iter().map(|a| a.0).collect()
    }
}

/// Exact law of W_1 + … + W_n for discrete summands, by iterated
/// convolution with merging of values closer than 1e-12 (relative).
pub fn exact_sum_law<S: Scalar>(summands: &[UnivariateSpec<S>]) -> Result<ExactLaw<S>> {
    let mut cur: Vec<(S, S)> = vec![(S::zero(), S::one())];
    for w in summands {
        let atoms = w
            .atoms()
            .ok_or_else(|| Error::Unsupported("exact enumeration needs discrete summands".into()))?;
        let product = cur.len().saturating_mul(atoms.len());
        if product > 10 * MAX_SUPPORT {
            return Err(Error::SupportTooLarge(product));
        }
        let mut next = Vec::with_capacity(product);
        for &(v, p) in &cur {
            for &(x, q) in &atoms {
                next.push((v + x, p * q));
            }
        }
        cur = merge(next);
        if cur.len() > MAX_SUPPORT {
            return Err(Error::SupportTooLarge(cur.len()));
        }
    }
    Ok(ExactLaw::from_sorted(cur))
}

/// Σ f(v)·p over the support.
pub fn exact_expectation<S: Scalar>(law: &ExactLaw<S>, f: impl Fn(S) -> S) -> S {
    law.support.iter().map(|(v, p)| f(*v) * *p).collect::<CompensatedSum<S>>().value()
}

fn try_expectation<S: Scalar>(law: &ExactLaw<S>, f: impl Fn(S) -> Result<S>) -> Result<S> {
    let mut acc = CompensatedSum::new();
    for (v, p) in &law.support {
        acc.add(f(*v)? * *p);
    }
    Ok(acc.value())
}

/// E f̃(U) − shift for U ~ N(0, σ²), where f̃ is f along its ridge
/// direction. Indicators use the normal distribution function; other
/// profiles are integrated numerically after subtracting `shift`, split at
/// their kinks.
fn gaussian_side<S: Scalar>(f: &FunctionSpec<S>, sigma: S, shift: S) -> Result<S> {
    match f {
        FunctionSpec::Indicator(set @ FavorableSetInstance::HalfSpace { b, .. }) if set.dim() > 1 => {
            Ok(SetDescriptor::HalfSpace { a: vec![S::one()], b: *b, closed: true }.gaussian_mass(|_| Ok(sigma))? - shift)
        }
        FunctionSpec::Indicator(set) => {
            Ok(SetDescriptor::Set { set: set.clone() }.gaussian_mass(|a| Ok(sigma * a[0].abs()))? - shift)
        }
        FunctionSpec::Scaled { factor, inner } => Ok(*factor * gaussian_side(inner, sigma, shift / *factor)?),
        _ => {
            let g = |u: S| f.eval_projected(u).map(|v| v - shift).unwrap_or(S::nan());
            gaussian_expectation(g, sigma, &f.projected_breakpoints(), &QuadratureConfig::default())
        }
    }
}

/// Signed E f(S) − E f(σZ) for f of one variable and S with law `law`.
fn gap_1d<S: Scalar>(f: &FunctionSpec<S>, law: &ExactLaw<S>, sigma: S) -> Result<S> {
    match f {
        FunctionSpec::LinearCombo(c) => {
            let mut acc = CompensatedSum::new();
            for (w, g) in c.terms() {
                acc.add(*w * gap_1d(g, law, sigma)?);
            }
            Ok(acc.value())
        }
        FunctionSpec::Scaled { factor, inner } => Ok(*factor * gap_1d(inner, law, sigma)?),
        FunctionSpec::FourierAtomic(spec) => {
            let es = try_expectation(law, |v| Ok(spec.eval(&[v])))?;
            Ok(es - fourier_gaussian(spec, |w| w[0] * w[0] * sigma * sigma))
        }
        _ => projected_gap(f, law, sigma),
    }
}

/// Signed gap along the ridge direction. The profile is centered at its
/// value at 0 so that constant offsets cancel exactly.
fn projected_gap<S: Scalar>(f: &FunctionSpec<S>, law: &ExactLaw<S>, sigma: S) -> Result<S> {
    let f0 = f.eval_projected(S::zero())?;
    let es = try_expectation(law, |v| Ok(f.eval_projected(v)? - f0))?;
    Ok(es - gaussian_side(f, sigma, f0)?)
}

/// Σ_j Re(c_j)·exp(−ω_jᵀΣω_j/2)
fn fourier_gaussian<S: Scalar>(spec: &FourierAtomicSpec<S>, quad: impl Fn(&[S]) -> S) -> S {
    spec.atoms.iter().map(|a| a.re * (-quad(&a.omega) * S::lit(0.5)).exp()).sum()
}

/// |E f(S) − E f(BZ)| for S = W_1 + … + W_n with discrete W_k and
/// B² = Σ E W_k², by exact enumeration against quadrature or closed forms.
pub fn exact_delta<S: Scalar>(f: &FunctionSpec<S>, summands: &[UnivariateSpec<S>]) -> Result<S> {
    if f.dim() != Some(1) {
        return Err(Error::DimensionMismatch { expected: 1, found: f.dim().unwrap_or(0) });
    }
    let sigma = MomentSummary::of(summands, false)?.scale();
    let law = exact_sum_law(summands)?;
    Ok(gap_1d(f, &law, sigma)?.abs())
}

/// Characteristic function E e^{i uᵀX} of one summand.
fn char_fn<S: Scalar>(x: &VectorSummand<S>, u: &[S]) -> Complex<S> {
    match x {
        VectorSummand::Discrete { atoms } => atoms
            .iter()
            .fold(Complex::new(S::zero(), S::zero()), |acc, (pt, p)| acc + Complex::from_polar(*p, dot(u, pt))),
        VectorSummand::Gaussian { covariance } => Complex::new((-covariance.quad_form(u) * S::lit(0.5)).exp(), S::zero()),
    }
}

fn gap_vector<S: Scalar>(f: &FunctionSpec<S>, seq: &VectorSequenceSpec<S>) -> Result<S> {
    match f {
        FunctionSpec::LinearCombo(c) => {
            let mut acc = CompensatedSum::new();
            for (w, g) in c.terms() {
                acc.add(*w * gap_vector(g, seq)?);
            }
            Ok(acc.value())
        }
        FunctionSpec::Scaled { factor, inner } if inner.ridge_direction().is_none() => Ok(*factor * gap_vector(inner, seq)?),
        FunctionSpec::FourierAtomic(spec) => {
            let inv_root_n = S::one() / S::from_count(seq.len()).sqrt();
            let es: S = spec
                .atoms
                .iter()
                .map(|a| {
                    let u: Vec<S> = a.omega.iter().map(|w| *w * inv_root_n).collect();
                    let phi = seq.summands().iter().fold(Complex::new(S::one(), S::zero()), |acc, x| acc * char_fn(x, &u));
                    (Complex::new(a.re, a.im) * phi).re
                })
                .sum();
            Ok(es - fourier_gaussian(spec, |w| seq.covariance().quad_form(w)))
        }
        _ => {
            let a = f.ridge_direction().ok_or_else(|| {
                Error::Unsupported("exact verification needs a ridge, half-space, one-dimensional or Fourier function".into())
            })?;
            let ws = seq.projected_spec(&a)?;
            projected_gap(f, &exact_sum_law(&ws)?, seq.covariance().sigma_norm(&a)?)
        }
    }
}

/// |E f(S_n) − E f(Z)| for a vector sequence, Z ~ N(0, Var S_n).
///
/// Ridge-type functions (and every function when d = 1) are reduced to the
/// exact law of the projected sum; atomic-Fourier functions use the product
/// of characteristic functions; linear combinations are split by term.
pub fn exact_delta_vector<S: Scalar>(f: &FunctionSpec<S>, seq: &VectorSequenceSpec<S>) -> Result<S> {
    if let Some(d) = f.dim() {
        if d != seq.dim() {
            return Err(Error::DimensionMismatch { expected: seq.dim(), found: d });
        }
    }
    Ok(gap_vector(f, seq)?.abs())
}

/// Exact law of f(S) for a ridge-type f (the pushforward used by the
/// level-set bound), together with the standard deviation of aᵀZ.
pub fn exact_pushforward<S: Scalar>(f: &FunctionSpec<S>, seq: &VectorSequenceSpec<S>) -> Result<(ExactLaw<S>, S)> {
    let a = f
        .ridge_direction()
        .ok_or_else(|| Error::Unsupported("exact pushforward needs a ridge-type function".into()))?;
    let law = exact_sum_law(&seq.projected_spec(&a)?)?;
    Ok((law.map(|u| f.eval_projected(u))?, seq.covariance().sigma_norm(&a)?))
}
