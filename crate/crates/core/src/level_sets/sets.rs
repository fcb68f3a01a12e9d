use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, norm2};
use crate::special::{normal_cdf, normal_interval, normal_sf};
use crate::Scalar;

/// Closed half-space {x : aᵀx ≥ b}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct HalfSpace<S> {
    pub a: Vec<S>,
    pub b: S,
}

impl<S: Scalar> HalfSpace<S> {
    pub fn new(a: Vec<S>, b: S) -> Result<Self> {
        let h = Self { a, b };
        h.validate()?;
        Ok(h)
    }

    fn validate(&self) -> Result<()> {
        if self.a.iter().any(|x| !x.is_finite()) || !self.b.is_finite() {
            return Err(Error::InvalidArgument("half-space has non-finite entries".into()));
        }
        if !(norm2(&self.a) > S::zero()) {
            return Err(Error::InvalidArgument("half-space direction must be non-zero".into()));
        }
        Ok(())
    }

    pub fn contains(&self, x: &[S]) -> bool {
        dot(&self.a, x) >= self.b
    }
}

/// A set from one of the favorable classes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound = "S: Scalar")]
pub enum FavorableSetInstance<S> {
    HalfSpace { a: Vec<S>, b: S },
    /// Closed ball {x : ‖x − center‖ ≤ radius}.
    Ball { center: Vec<S>, radius: S },
    /// Intersection of closed half-spaces.
    ConvexPolytope { faces: Vec<HalfSpace<S>> },
}

impl<S: Scalar> FavorableSetInstance<S> {
    pub fn validate(&self) -> Result<()> {
        match self {
            FavorableSetInstance::HalfSpace { a, b } => HalfSpace { a: a.clone(), b: *b }.validate(),
            FavorableSetInstance::Ball { center, radius } => {
                if center.is_empty() || center.iter().any(|x| !x.is_finite()) {
                    return Err(Error::InvalidArgument("ball center must be a finite non-empty vector".into()));
                }
                if !(*radius >= S::zero()) || !radius.is_finite() {
                    return Err(Error::InvalidArgument(format!("ball radius {radius} must be non-negative")));
                }
                Ok(())
            }
            FavorableSetInstance::ConvexPolytope { faces } => {
                let Some(first) = faces.first() else {
                    return Err(Error::InvalidArgument("polytope needs at least one face".into()));
                };
                for f in faces {
                    f.validate()?;
                    if f.a.len() != first.a.len() {
                        return Err(Error::DimensionMismatch { expected: first.a.len(), found: f.a.len() });
                    }
                }
                Ok(())
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            FavorableSetInstance::HalfSpace { a, .. } => a.len(),
            FavorableSetInstance::Ball { center, .. } => center.len(),
            FavorableSetInstance::ConvexPolytope { faces } => faces[0].a.len(),
        }
    }

    pub fn contains(&self, x: &[S]) -> bool {
        match self {
            FavorableSetInstance::HalfSpace { a, b } => dot(a, x) >= *b,
            FavorableSetInstance::Ball { center, radius } => {
                let d2: S = center.iter().zip(x).map(|(c, v)| (*v - *c) * (*v - *c)).sum();
                d2 <= *radius * *radius
            }
            FavorableSetInstance::ConvexPolytope { faces } => faces.iter().all(|f| f.contains(x)),
        }
    }

    /// For d = 1 every instance is a closed interval of the line; returns its
    /// endpoints (possibly infinite, empty when lo > hi).
    pub fn as_interval(&self) -> Option<(S, S)> {
        if self.dim() != 1 {
            return None;
        }
        let ray = |a: S, b: S| {
            let c = b / a;
            if a > S::zero() {
                (c, S::infinity())
            } else {
                (S::neg_infinity(), c)
            }
        };
        Some(match self {
            FavorableSetInstance::HalfSpace { a, b } => ray(a[0], *b),
            FavorableSetInstance::Ball { center, radius } => (center[0] - *radius, center[0] + *radius),
            FavorableSetInstance::ConvexPolytope { faces } => faces.iter().fold((S::neg_infinity(), S::infinity()), |(lo, hi), f| {
                let (l, h) = ray(f.a[0], f.b);
                (lo.max(l), hi.min(h))
            }),
        })
    }
}

/// Symbolic description of an upper level set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound = "S: Scalar")]
pub enum SetDescriptor<S> {
    Empty,
    Full,
    /// {x : aᵀx ≥ b} when `closed`, {x : aᵀx > b} otherwise.
    HalfSpace { a: Vec<S>, b: S, closed: bool },
    Set { set: FavorableSetInstance<S> },
}

impl<S: Scalar> SetDescriptor<S> {
    pub fn contains(&self, x: &[S]) -> bool {
        match self {
            SetDescriptor::Empty => false,
            SetDescriptor::Full => true,
            SetDescriptor::HalfSpace { a, b, closed } => {
                let u = dot(a, x);
                if *closed {
                    u >= *b
                } else {
                    u > *b
                }
            }
            SetDescriptor::Set { set } => set.contains(x),
        }
    }

    /// Mass under N(0, Σ) when the set is a half-space or a one-dimensional
    /// interval. `sigma_norm` maps a direction a to √(aᵀΣa); in d = 1 it is
    /// the standard deviation times |a|.
    pub fn gaussian_mass(&self, sigma_norm: impl Fn(&[S]) -> Result<S>) -> Result<S> {
        match self {
            SetDescriptor::Empty => Ok(S::zero()),
            SetDescriptor::Full => Ok(S::one()),
            SetDescriptor::HalfSpace { a, b, .. } => Ok(normal_sf(*b / sigma_norm(a)?)),
            SetDescriptor::Set { set: FavorableSetInstance::HalfSpace { a, b } } => Ok(normal_sf(*b / sigma_norm(a)?)),
            SetDescriptor::Set { set } => {
                let (lo, hi) = set.as_interval().ok_or_else(|| {
                    Error::Unsupported("Gaussian mass of a multivariate ball or polytope has no closed form".into())
                })?;
                if lo > hi {
                    return Ok(S::zero());
                }
                let sd = sigma_norm(&[S::one()])?;
                if lo == S::neg_infinity() {
                    return Ok(normal_cdf(hi / sd));
                }
                Ok(normal_interval(lo / sd, hi / sd))
            }
        }
    }
}
