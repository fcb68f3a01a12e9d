use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{UnivariateSpec, VectorSequenceSpec};
use crate::error::{Error, Result};
use crate::level_sets::FunctionSpec;
use crate::rng::Stream;
use crate::scalar::CompensatedSum;
use crate::Scalar;

/// Number of fixed work units. Results depend on the shard layout only,
/// never on how many threads execute it.
pub const SHARDS: usize = 64;

pub const MIN_SAMPLES: usize = 100;

/// Monte Carlo estimate of E f(S) − E f(Z).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct MCEstimate<S> {
    pub mean: S,
    pub std_error: S,
    pub n_samples: usize,
    pub seed: u64,
}

/// Count, mean and centered sum of squares of one shard.
#[derive(Debug, Clone, Copy)]
struct Moments<S> {
    n: usize,
    mean: S,
    m2: S,
}

impl<S: Scalar> Moments<S> {
    fn of(values: impl Iterator<Item = Result<S>>) -> Result<Self> {
        // Shifting by the first value keeps constant inputs exactly zero-variance.
        let mut shift = None;
        let (mut s1, mut s2) = (CompensatedSum::new(), CompensatedSum::new());
        let mut n = 0;
        for v in values {
            let v = v?;
            if !v.is_finite() {
                return Err(Error::Numeric("function value is not finite".into()));
            }
            let k = *shift.get_or_insert(v);
            let d = v - k;
            s1.add(d);
            s2.add(d * d);
            n += 1;
        }
        let Some(k) = shift else {
            return Ok(Self { n: 0, mean: S::zero(), m2: S::zero() });
        };
        let nn = S::from_count(n);
        let (a, b) = (s1.value(), s2.value());
        Ok(Self { n, mean: k + a / nn, m2: (b - a * a / nn).max(S::zero()) })
    }

    fn merge(self, o: Self) -> Self {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let (na, nb, nn) = (S::from_count(self.n), S::from_count(o.n), S::from_count(n));
        let delta = o.mean - self.mean;
        Self { n, mean: self.mean + delta * nb / nn, m2: self.m2 + o.m2 + delta * delta * na * nb / nn }
    }

    fn variance(&self) -> S {
        if self.n < 2 {
            S::zero()
        } else {
            self.m2 / S::from_count(self.n - 1)
        }
    }
}

fn shard_sizes(total: usize) -> Vec<usize> {
    (0..SHARDS).map(|k| total / SHARDS + usize::from(k < total % SHARDS)).collect()
}

/// Estimates E f(S_n) − E f(Z) with Z ~ N(0, Var S_n). S and Z are drawn
/// from independent stream families; each family is split into fixed
/// shards run in parallel and merged in shard order.
pub fn mc_delta<S: Scalar>(f: &FunctionSpec<S>, seq: &VectorSequenceSpec<S>, samples: usize, seed: u64) -> Result<MCEstimate<S>> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!("need at least {MIN_SAMPLES} samples, got {samples}")));
    }
    if let Some(d) = f.dim() {
        if d != seq.dim() {
            return Err(Error::DimensionMismatch { expected: seq.dim(), found: d });
        }
    }
    let root = seq.covariance().sqrt_psd()?;
    let d = seq.dim();
    let sizes = shard_sizes(samples);
    let s_family = Stream::new(seed, 0);
    let z_family = Stream::new(seed, 1);

    let shards: Vec<Result<(Moments<S>, Moments<S>)>> = sizes
        .par_iter()
        .enumerate()
        .map(|(k, &m)| {
            let mut rng = s_family.substream(k as u64).rng();
            let s = Moments::of((0..m).map(|_| f.eval(&seq.draw_normalized_sum(&mut rng))))?;
            let mut rng = z_family.substream(k as u64).rng();
            let z = Moments::of((0..m).map(|_| {
                let g: Vec<S> = (0..d).map(|_| S::lit(rng.sample::<f64, _>(StandardNormal))).collect();
                f.eval(&root.mul_vec(&g))
            }))?;
            Ok((s, z))
        })
        .collect();

    let empty = Moments { n: 0, mean: S::zero(), m2: S::zero() };
    let (mut ms, mut mz) = (empty, empty);
    for r in shards {
        let (s, z) = r?;
        ms = ms.merge(s);
        mz = mz.merge(z);
    }
    let nn = S::from_count(samples);
    Ok(MCEstimate {
        mean: ms.mean - mz.mean,
        std_error: (ms.variance() / nn + mz.variance() / nn).sqrt(),
        n_samples: samples,
        seed,
    })
}

/// [`mc_delta`] for S = W_1 + … + W_n with scalar summands.
pub fn mc_delta_univariate<S: Scalar>(f: &FunctionSpec<S>, summands: &[UnivariateSpec<S>], samples: usize, seed: u64) -> Result<MCEstimate<S>> {
    mc_delta(f, &VectorSequenceSpec::from_univariate_sum(summands)?, samples, seed)
}
