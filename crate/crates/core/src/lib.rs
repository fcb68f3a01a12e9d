//! Explicit Gaussian-approximation error bounds for normalized sums of
//! independent random vectors, with exact and Monte Carlo ground truth.
//!
//! For S = n^{-1/2} Σ X_i and Z ~ N(0, Var S), the quantity of interest is
//! Δ_f = |E f(S) − E f(Z)|. The crate evaluates several bounds on Δ_f:
//! level-set bounds for functions whose upper level sets are half-spaces,
//! balls or convex sets ([`level_sets`], [`be_uniform`]), non-uniform and
//! ReLU/ReLU² ridge bounds ([`be_nonuniform`]), and bounds for functions with
//! finite Barron norm ([`barron`]). [`verify`] computes Δ_f itself.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix `f64`.

// NaN must fail the range checks, so `!(x > 0)` is intentional.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::type_complexity)]

pub mod barron;
pub mod be_nonuniform;
pub mod be_uniform;
pub mod bound;
pub mod dist;
pub mod error;
pub mod level_sets;
pub mod linalg;
pub mod quadrature;
pub mod rng;
pub mod scalar;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Univariate = dist::UnivariateSpec<f64>;
pub type Sequence = dist::VectorSequenceSpec<f64>;
pub type Summand = dist::VectorSummand<f64>;
pub type Matrix = linalg::SymMatrix<f64>;
pub type Function = level_sets::FunctionSpec<f64>;
pub type Fourier = barron::FourierAtomicSpec<f64>;
pub type Bound = bound::BoundValue<f64>;
pub type Law = verify::ExactLaw<f64>;
pub type Estimate = verify::MCEstimate<f64>;
pub type Report = verify::VerdictReport<f64>;
