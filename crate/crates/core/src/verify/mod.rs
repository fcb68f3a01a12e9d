//! Ground truth for Δ_f = |E f(S) − E f(Z)| and verdicts against bounds.

mod exact;
mod mc;
mod verdict;

pub use crate::quadrature::{gaussian_expectation, QuadratureConfig};
pub use exact::{
    exact_delta, exact_delta_vector, exact_expectation, exact_pushforward, exact_sum_law, ExactLaw, MAX_SUPPORT, MERGE_TOL,
};
pub use mc::{mc_delta, mc_delta_univariate, MCEstimate, MIN_SAMPLES, SHARDS};
pub use verdict::{verify_inequality, Lhs, Verdict, VerdictPolicy, VerdictReport};
