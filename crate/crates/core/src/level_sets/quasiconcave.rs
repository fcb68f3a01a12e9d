use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::Scalar;

/// A triple (x, y, α) with f(αx + (1−α)y) < min{f(x), f(y)}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct Witness<S> {
    pub x: Vec<S>,
    pub y: Vec<S>,
    pub alpha: S,
    pub f_x: S,
    pub f_y: S,
    pub f_mix: S,
}

impl<S: Scalar> Witness<S> {
    pub fn mix(&self) -> Vec<S> {
        mix(&self.x, &self.y, self.alpha)
    }

    /// Amount by which the quasiconcavity inequality fails when `f` is
    /// evaluated afresh at the witness.
    pub fn violation(&self, f: impl Fn(&[S]) -> S) -> S {
        f(&self.x).min(f(&self.y)) - f(&self.mix())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
#[serde(bound = "S: Scalar")]
pub enum QuasiconcavityOutcome<S> {
    /// No violation found in `trials` attempts. Not a proof.
    Pass { trials: usize },
    Fail { witness: Witness<S> },
}

impl<S> QuasiconcavityOutcome<S> {
    pub fn passed(&self) -> bool {
        matches!(self, QuasiconcavityOutcome::Pass { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiconcavityConfig {
    pub trials: usize,
    pub tolerance: f64,
}

impl Default for QuasiconcavityConfig {
    fn default() -> Self {
        Self { trials: 10_000, tolerance: 1e-9 }
    }
}

fn mix<S: Scalar>(x: &[S], y: &[S], alpha: S) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| alpha * *a + (S::one() - alpha) * *b).collect()
}

/// Randomized falsification of quasiconcavity on the box [lo, hi]^d:
/// draws (x, y, α) uniformly and returns the first triple violating
/// f(αx + (1−α)y) ≥ min{f(x), f(y)} by more than the tolerance.
pub fn quasiconcavity_check<S: Scalar>(
    f: impl Fn(&[S]) -> S,
    d: usize,
    lo: S,
    hi: S,
    cfg: &QuasiconcavityConfig,
    stream: Stream,
) -> Result<QuasiconcavityOutcome<S>> {
    if d == 0 || cfg.trials == 0 {
        return Err(Error::InvalidArgument("dimension and trials must be positive".into()));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidArgument(format!("box [{lo}, {hi}] is empty or unbounded")));
    }
    let tol = S::lit(cfg.tolerance);
    let mut rng = stream.rng();
    let width = (hi - lo).as_f64();
    let point = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<S> {
        (0..d).map(|_| lo + S::lit(rng.random::<f64>() * width)).collect()
    };
    for _ in 0..cfg.trials {
        let x = point(&mut rng);
        let y = point(&mut rng);
        let alpha = S::lit(rng.random::<f64>());
        let m = mix(&x, &y, alpha);
        let (f_x, f_y, f_mix) = (f(&x), f(&y), f(&m));
        if [f_x, f_y, f_mix].iter().any(|v| v.is_nan()) {
            return Err(Error::Numeric("function returned NaN".into()));
        }
        if f_mix < f_x.min(f_y) - tol {
            return Ok(QuasiconcavityOutcome::Fail { witness: Witness { x, y, alpha, f_x, f_y, f_mix } });
        }
    }
    Ok(QuasiconcavityOutcome::Pass { trials: cfg.trials })
}
