use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::Scalar;

use super::function::FunctionSpec;

/// A law on the real line seen through its upper tail probabilities.
///
/// `atoms` must contain every point carrying positive mass; extra points are
/// allowed. Between atoms the tail functions must be continuous.
pub trait RealLaw<S: Scalar> {
    /// P(Y ≥ t)
    fn prob_ge(&self, t: S) -> Result<S>;
    /// P(Y > t)
    fn prob_gt(&self, t: S) -> Result<S>;
    fn atoms(&self) -> Vec<S>;
}

/// Empirical law of a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalLaw<S> {
    sorted: Vec<S>,
}

impl<S: Scalar> EmpiricalLaw<S> {
    pub fn new(mut samples: Vec<S>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument("empty sample".into()));
        }
        if samples.iter().any(|x| x.is_nan()) {
            return Err(Error::InvalidArgument("sample contains NaN".into()));
        }
        samples.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
        Ok(Self { sorted: samples })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    fn frac(&self, count: usize) -> S {
        S::from_count(count) / S::from_count(self.sorted.len())
    }
}

impl<S: Scalar> RealLaw<S> for EmpiricalLaw<S> {
    fn prob_ge(&self, t: S) -> Result<S> {
        Ok(self.frac(self.sorted.len() - self.sorted.partition_point(|x| *x < t)))
    }

    fn prob_gt(&self, t: S) -> Result<S> {
        Ok(self.frac(self.sorted.len() - self.sorted.partition_point(|x| *x <= t)))
    }

    fn atoms(&self) -> Vec<S> {
        let mut a = self.sorted.clone();
        a.dedup();
        a
    }
}

/// Law of f(Z) for Z ~ N(0, Σ) and f with symbolic level sets.
#[derive(Debug, Clone)]
pub struct GaussianPushforward<S: Scalar> {
    f: FunctionSpec<S>,
    covariance: SymMatrix<S>,
}

impl<S: Scalar> GaussianPushforward<S> {
    pub fn new(f: FunctionSpec<S>, covariance: SymMatrix<S>) -> Result<Self> {
        if !f.is_symbolic() {
            return Err(Error::Unsupported("Gaussian pushforward needs symbolic level sets".into()));
        }
        if let Some(d) = f.dim() {
            if d != covariance.dim() {
                return Err(Error::DimensionMismatch { expected: covariance.dim(), found: d });
            }
        }
        Ok(Self { f, covariance })
    }

    /// Law of f(σZ) for a scalar standard deviation σ.
    pub fn univariate(f: FunctionSpec<S>, sigma: S) -> Result<Self> {
        Self::new(f, SymMatrix::diagonal(&[sigma * sigma]))
    }

    fn mass(&self, set: super::SetDescriptor<S>) -> Result<S> {
        set.gaussian_mass(|a| self.covariance.sigma_norm(a))
    }
}

impl<S: Scalar> RealLaw<S> for GaussianPushforward<S> {
    fn prob_ge(&self, t: S) -> Result<S> {
        self.mass(self.f.upper_level_set(t)?)
    }

    fn prob_gt(&self, t: S) -> Result<S> {
        self.mass(self.f.strict_upper_level_set(t)?)
    }

    fn atoms(&self) -> Vec<S> {
        self.f.flat_values()
    }
}

/// sup_t over both one-sided tail gaps, |P(Y₁ ≥ t) − P(Y₂ ≥ t)| and
/// |P(Y₁ > t) − P(Y₂ > t)|: the Kolmogorov distance between the two laws.
///
/// Exact because on each gap between consecutive atoms one law is constant
/// and the other monotone, so the supremum is a limit at an atom.
pub fn pushforward_kolmogorov<S: Scalar>(first: &impl RealLaw<S>, second: &impl RealLaw<S>) -> Result<S> {
    let mut pts = first.atoms();
    pts.extend(second.atoms());
    if pts.is_empty() {
        return Err(Error::InvalidArgument("neither law has atoms to compare at".into()));
    }
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite atoms"));
    pts.dedup();
    let mut best = S::zero();
    for t in pts {
        let ge = (first.prob_ge(t)? - second.prob_ge(t)?).abs();
        let gt = (first.prob_gt(t)? - second.prob_gt(t)?).abs();
        best = best.max(ge).max(gt);
    }
    Ok(best.min(S::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level_sets::function::{Activation, MonotoneTable};
    use crate::level_sets::sets::FavorableSetInstance;
    use approx::assert_relative_eq;

    #[test]
    fn empirical_example() {
        let a = EmpiricalLaw::new(vec![0.0, 1.0, 1.0]).unwrap();
        let b = EmpiricalLaw::new(vec![0.0, 0.0, 1.0]).unwrap();
        assert_relative_eq!(pushforward_kolmogorov(&a, &b).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        assert_eq!(pushforward_kolmogorov(&a, &a).unwrap(), 0.0);
        assert!(EmpiricalLaw::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn gaussian_pushforward_of_half_line() {
        let f = FunctionSpec::indicator(FavorableSetInstance::HalfSpace { a: vec![1.0], b: 0.0 }).unwrap();
        let g = GaussianPushforward::univariate(f, 2.0).unwrap();
        assert_eq!(g.prob_ge(0.5).unwrap(), 0.5);
        assert_eq!(g.prob_gt(1.0).unwrap(), 0.0);
        assert_eq!(g.prob_ge(0.0).unwrap(), 1.0);
        assert_eq!(g.prob_gt(0.0).unwrap(), 0.5);
    }

    #[test]
    fn relu_pushforward_tail() {
        let f = FunctionSpec::ridge(Activation::Relu, vec![1.0, 1.0], 0.0).unwrap();
        let g = GaussianPushforward::new(f, SymMatrix::identity(2)).unwrap();
        // aᵀZ ~ N(0, 2).
        assert_relative_eq!(g.prob_ge(1.0).unwrap(), crate::special::normal_sf(1.0 / 2f64.sqrt()), epsilon = 1e-15);
        assert_eq!(g.prob_ge(0.0).unwrap(), 1.0);
        assert_eq!(g.prob_gt(0.0).unwrap(), 0.5);
    }

    #[test]
    fn capped_relu_atoms() {
        let f = FunctionSpec::ridge(Activation::MonotoneTable(MonotoneTable::capped_relu(1.0).unwrap()), vec![1.0], 0.0).unwrap();
        let g = GaussianPushforward::univariate(f, 1.0).unwrap();
        assert_eq!(g.atoms(), vec![0.0, 1.0]);
        assert_relative_eq!(g.prob_ge(1.0).unwrap(), crate::special::normal_sf(1.0), epsilon = 1e-15);
        assert_eq!(g.prob_gt(1.0).unwrap(), 0.0);
    }
}
