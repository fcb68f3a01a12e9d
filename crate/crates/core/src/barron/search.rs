use std::cmp::Ordering;

use rand::Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::norm1;
use crate::rng::Stream;
use crate::Scalar;

/// Multistart settings for maximizing over {a : ‖a‖₁ = 1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct L1SphereSearchConfig {
    pub restarts: usize,
    /// Sweeps of pairwise mass transfer per start.
    pub local_steps: usize,
    pub step_decay: f64,
    pub include_vertices: bool,
    pub stream: Stream,
}

impl Default for L1SphereSearchConfig {
    fn default() -> Self {
        Self { restarts: 32, local_steps: 200, step_decay: 0.5, include_vertices: true, stream: Stream::new(0, 0) }
    }
}

impl L1SphereSearchConfig {
    fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.local_steps == 0 {
            return Err(Error::InvalidArgument("restarts and local_steps must be positive".into()));
        }
        if !(self.step_decay > 0.0 && self.step_decay < 1.0) {
            return Err(Error::InvalidArgument(format!("step_decay {} must lie in (0, 1)", self.step_decay)));
        }
        Ok(())
    }
}

/// Best point found and its objective value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct SphereOptimum<S> {
    pub a: Vec<S>,
    pub value: S,
}

const INITIAL_STEP: f64 = 0.25;
const MIN_STEP: f64 = 1e-12;

fn evaluate<S: Scalar>(objective: &(impl Fn(&[S]) -> S + Sync), a: &[S]) -> Result<S> {
    let v = objective(a);
    if !v.is_finite() {
        return Err(Error::Numeric(format!("objective is not finite ({v}) at a = {a:?}")));
    }
    Ok(v)
}

fn compose<S: Scalar>(mags: &[S], signs: &[bool]) -> Vec<S> {
    mags.iter().zip(signs).map(|(m, neg)| if *neg { -*m } else { *m }).collect()
}

/// Coordinate-pair mass transfer: moves up to `step` of ℓ1 mass from one
/// coordinate to another (choosing the sign of an empty receiver), plus
/// single sign flips. Accepts strict improvements and shrinks the step when
/// a sweep finds none.
fn refine<S: Scalar>(
    objective: &(impl Fn(&[S]) -> S + Sync),
    start: &[S],
    cfg: &L1SphereSearchConfig,
) -> Result<SphereOptimum<S>> {
    let d = start.len();
    let mut mags: Vec<S> = start.iter().map(|x| x.abs()).collect();
    let mut signs: Vec<bool> = start.iter().map(|x| *x < S::zero()).collect();
    let mut best = evaluate(objective, &compose(&mags, &signs))?;
    let mut step = S::lit(INITIAL_STEP);
    for _ in 0..cfg.local_steps {
        let mut improved = false;
        for i in 0..d {
            if mags[i] > S::zero() && d > 1 {
                signs[i] = !signs[i];
                let v = evaluate(objective, &compose(&mags, &signs))?;
                if v > best {
                    best = v;
                    improved = true;
                } else {
                    signs[i] = !signs[i];
                }
            }
            for j in 0..d {
                if i == j || mags[i] == S::zero() {
                    continue;
                }
                let delta = step.min(mags[i]);
                let choices: &[bool] = if mags[j] > S::zero() { &[false] } else { &[false, true] };
                for &flip in choices {
                    let (mi, mj, sj) = (mags[i], mags[j], signs[j]);
                    mags[i] = mi - delta;
                    mags[j] = mj + delta;
                    if flip {
                        signs[j] = !sj;
                    }
                    let v = evaluate(objective, &compose(&mags, &signs))?;
                    if v > best {
                        best = v;
                        improved = true;
                        break;
                    }
                    mags[i] = mi;
                    mags[j] = mj;
                    signs[j] = sj;
                }
            }
        }
        if !improved {
            step = step * S::lit(cfg.step_decay);
            if step < S::lit(MIN_STEP) {
                break;
            }
        }
    }
    // Pin the ℓ1 norm to one exactly and re-score.
    let total = norm1(&mags);
    let a: Vec<S> = compose(&mags, &signs).into_iter().map(|x| x / total).collect();
    let value = evaluate(objective, &a)?;
    Ok(SphereOptimum { a, value })
}

fn better<S: Scalar>(x: &SphereOptimum<S>, y: &SphereOptimum<S>) -> Ordering {
    x.value
        .partial_cmp(&y.value)
        .unwrap_or(Ordering::Equal)
        .then_with(|| {
            // Lexicographically smaller point wins ties.
            for (p, q) in x.a.iter().zip(&y.a) {
                match q.partial_cmp(p) {
                    Some(Ordering::Equal) | None => continue,
                    Some(o) => return o,
                }
            }
            Ordering::Equal
        })
}

fn random_start<S: Scalar>(d: usize, stream: Stream) -> Vec<S> {
    let mut rng = stream.rng();
    let e: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = e.iter().sum();
    e.into_iter().map(|x| S::lit(if rng.random::<bool>() { -x / total } else { x / total })).collect()
}

/// Maximizes `objective` over the ℓ1 unit sphere in R^d.
///
/// Starts are the 2d signed vertices (when enabled), the caller's extra
/// points, and `restarts` random points with Dirichlet(1) magnitudes and
/// random signs. Starts are refined independently in parallel; the best
/// result is chosen by value then lexicographic order, so the answer does
/// not depend on scheduling.
pub fn sup_over_l1_sphere<S: Scalar>(
    objective: impl Fn(&[S]) -> S + Sync,
    d: usize,
    cfg: &L1SphereSearchConfig,
) -> Result<SphereOptimum<S>> {
    sup_over_l1_sphere_from(objective, d, cfg, &[])
}

/// [`sup_over_l1_sphere`] with additional starting points (rescaled onto the
/// sphere).
pub fn sup_over_l1_sphere_from<S: Scalar>(
    objective: impl Fn(&[S]) -> S + Sync,
    d: usize,
    cfg: &L1SphereSearchConfig,
    extra: &[Vec<S>],
) -> Result<SphereOptimum<S>> {
    cfg.validate()?;
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let mut starts: Vec<Vec<S>> = Vec::new();
    if cfg.include_vertices {
        for i in 0..d {
            for sign in [S::one(), -S::one()] {
                let mut v = vec![S::zero(); d];
                v[i] = sign;
                starts.push(v);
            }
        }
    }
    for e in extra {
        if e.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: e.len() });
        }
        let n = norm1(e);
        if n > S::zero() && n.is_finite() {
            starts.push(e.iter().map(|x| *x / n).collect());
        }
    }
    starts.extend((0..cfg.restarts).map(|k| random_start(d, cfg.stream.substream(k as u64))));

    let results: Vec<Result<SphereOptimum<S>>> = starts.par_iter().map(|s| refine(&objective, s, cfg)).collect();
    let mut best: Option<SphereOptimum<S>> = None;
    for r in results {
        let r = r?;
        if best.as_ref().is_none_or(|b| better(&r, b) == Ordering::Greater) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least one start"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SymMatrix;

    #[test]
    fn linear_objective() {
        let r = sup_over_l1_sphere(|a: &[f64]| a.iter().sum(), 3, &L1SphereSearchConfig::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!((norm1(&r.a) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn euclidean_norm_peaks_at_vertices() {
        let r = sup_over_l1_sphere(|a: &[f64]| a.iter().map(|x| x * x).sum(), 2, &L1SphereSearchConfig::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(r.a.iter().any(|x| x.abs() == 1.0));
    }

    #[test]
    fn quadratic_form() {
        let m = SymMatrix::diagonal(&[1.0, 9.0]);
        let r = sup_over_l1_sphere(|a: &[f64]| m.quad_form(a), 2, &L1SphereSearchConfig::default()).unwrap();
        assert_eq!(r.value, 9.0);
        assert_eq!(r.a[0], 0.0);
        assert_eq!(r.a[1].abs(), 1.0);
    }

    #[test]
    fn interior_maximum_without_vertices() {
        // max of −‖a − c‖² on the sphere with c = (0.3, −0.7) sits at c.
        let cfg = L1SphereSearchConfig { include_vertices: false, restarts: 8, ..Default::default() };
        let r = sup_over_l1_sphere(|a: &[f64]| -((a[0] - 0.3).powi(2) + (a[1] + 0.7).powi(2)), 2, &cfg).unwrap();
        assert!(r.value > -1e-10, "{r:?}");
    }

    #[test]
    fn non_finite_objective_is_reported() {
        let e = sup_over_l1_sphere(|_: &[f64]| f64::NAN, 2, &L1SphereSearchConfig::default()).unwrap_err();
        assert!(matches!(e, Error::Numeric(_)));
    }

    #[test]
    fn deterministic() {
        let f = |a: &[f64]| (3.0 * a[0]).sin() + a[1] * a[2];
        let cfg = L1SphereSearchConfig { stream: Stream::new(5, 1), ..Default::default() };
        let a = sup_over_l1_sphere(f, 3, &cfg).unwrap();
        let b = sup_over_l1_sphere(f, 3, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
