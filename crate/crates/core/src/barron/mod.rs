//! Fourier norms of atomic-Fourier functions and the ridge integral
//! representation bounds they feed.

mod fourier;
mod search;

pub use fourier::{v_norm, FourierAtom, FourierAtomicSpec};
pub use search::{sup_over_l1_sphere, sup_over_l1_sphere_from, L1SphereSearchConfig, SphereOptimum};

use serde::{Deserialize, Serialize};

use crate::bound::{BoundValue, ConstantSymbol};
use crate::dist::{Side, UnivariateSpec, VectorSequenceSpec};
use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::scalar::CompensatedSum;
use crate::Scalar;

/// ‖a‖_Σ = √(aᵀΣa)
pub fn sigma_norm<S: Scalar>(a: &[S], sigma: &SymMatrix<S>) -> Result<S> {
    sigma.sigma_norm(a)
}

/// Objective values at one direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct DirectionValues<S> {
    pub a: Vec<S>,
    pub tail: S,
    pub body: S,
}

/// The bound with both suprema, their maximizers, and the objective values
/// at the normalized atom frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct IntegralRepReport<S> {
    pub bound: BoundValue<S>,
    pub tail_sup: SphereOptimum<S>,
    pub body_sup: SphereOptimum<S>,
    pub atom_directions: Vec<DirectionValues<S>>,
}

/// Truncated moments of the projection W_k = aᵀX_k/√n at the level
/// B = ‖a‖_Σ.
struct Projection<S> {
    scale: S,
    tail: S,
    body: S,
    log_tail: Option<S>,
}

impl<S: Scalar> Projection<S> {
    fn at(seq: &VectorSequenceSpec<S>, a: &[S], with_log: bool) -> Result<Self> {
        let ws: Vec<UnivariateSpec<S>> = seq.projected_spec(a)?;
        let scale = seq.covariance().sigma_norm(a)?;
        let sum = |g: &dyn Fn(&UnivariateSpec<S>) -> Result<S>| -> Result<S> {
            let mut acc = CompensatedSum::new();
            for w in &ws {
                acc.add(g(w)?);
            }
            Ok(acc.value())
        };
        Ok(Self {
            scale,
            tail: sum(&|w| w.truncated_second_moment(scale, Side::AtOrAbove))?,
            body: sum(&|w| w.truncated_third_moment(scale, Side::Below))?,
            log_tail: if with_log { Some(sum(&|w| w.log_weighted_truncated_second_moment(scale))?) } else { None },
        })
    }
}

/// The two objectives whose suprema make up the bound, in terms of
/// T₂ = Σ E W²1{|W| ≥ B}, T₃ = Σ E|W|³1{|W| < B}, L = Σ E W² ln|W| 1{|W| ≥ B}:
///
/// s = 2: tail = T₂/B, body = T₃/(2B²);
/// s = 3: tail = (1 + ln√n − ln B)·T₂ + L, body = T₃/B.
///
/// These are the ridge expressions in aᵀX_k with (aᵀX_k)² = nW² and the
/// logarithm ln(e|aᵀX_k|/‖a‖_Σ) expanded.
fn objectives<S: Scalar>(seq: &VectorSequenceSpec<S>, s: u32, a: &[S]) -> Result<(S, S)> {
    let p = Projection::at(seq, a, s == 3)?;
    let b = p.scale;
    Ok(if s == 2 {
        (p.tail / b, p.body / (S::lit(2.0) * b * b))
    } else {
        let log_root_n = S::from_count(seq.len()).ln() * S::lit(0.5);
        ((S::one() + log_root_n - b.ln()) * p.tail + p.log_tail.expect("computed for s = 3"), p.body / b)
    })
}

fn check_s(s: u32) -> Result<()> {
    if s == 2 || s == 3 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("smoothness s = {s} must be 2 or 3")))
    }
}

/// Coefficient of A for f with an integral representation of total
/// variation |v| over ridge atoms:
///
/// s = 2: `|v|·[sup_a T₂/B + sup_a T₃/(2B²)]`,
/// s = 3: `2|v|·[sup_a ((1 + ln√n − ln B)T₂ + L) + sup_a T₃/B]`,
///
/// suprema over ‖a‖₁ = 1 (see [`sup_over_l1_sphere`]).
pub fn integral_rep_bound<S: Scalar>(
    seq: &VectorSequenceSpec<S>,
    v_abs: S,
    s: u32,
    cfg: &L1SphereSearchConfig,
) -> Result<IntegralRepReport<S>> {
    integral_rep_bound_with_directions(seq, v_abs, s, cfg, &[])
}

fn integral_rep_bound_with_directions<S: Scalar>(
    seq: &VectorSequenceSpec<S>,
    v_abs: S,
    s: u32,
    cfg: &L1SphereSearchConfig,
    directions: &[Vec<S>],
) -> Result<IntegralRepReport<S>> {
    check_s(s)?;
    if !(v_abs >= S::zero()) || !v_abs.is_finite() {
        return Err(Error::InvalidArgument(format!("|v| = {v_abs} must be finite and non-negative")));
    }
    let d = seq.dim();
    let component = |pick: usize| {
        move |a: &[S]| match objectives(seq, s, a) {
            Ok((t, b)) => {
                if pick == 0 {
                    t
                } else {
                    b
                }
            }
            Err(_) => S::nan(),
        }
    };
    let tail_sup = sup_over_l1_sphere_from(component(0), d, cfg, directions)?;
    let body_sup = sup_over_l1_sphere_from(component(1), d, cfg, directions)?;
    let atom_directions = directions
        .iter()
        .map(|a| objectives(seq, s, a).map(|(tail, body)| DirectionValues { a: a.clone(), tail, body }))
        .collect::<Result<Vec<_>>>()?;
    let lead = if s == 2 { v_abs } else { S::lit(2.0) * v_abs };
    let bound = BoundValue::zero(Some(ConstantSymbol::A))
        .with("sup_tail", S::zero(), lead * tail_sup.value)
        .with("sup_body", S::zero(), lead * body_sup.value);
    Ok(IntegralRepReport { bound, tail_sup, body_sup, atom_directions })
}

/// [`integral_rep_bound`] with |v| = 2·v_{f,s}. Atom directions are also
/// used as search starts.
pub fn barron_bound<S: Scalar>(
    f: &FourierAtomicSpec<S>,
    seq: &VectorSequenceSpec<S>,
    s: u32,
    cfg: &L1SphereSearchConfig,
) -> Result<IntegralRepReport<S>> {
    f.validate()?;
    let d = f.dim().expect("validated spec has atoms");
    if d != seq.dim() {
        return Err(Error::DimensionMismatch { expected: seq.dim(), found: d });
    }
    let v = v_norm(f, s)?;
    integral_rep_bound_with_directions(seq, S::lit(2.0) * v, s, cfg, &f.directions())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::VectorSummand;
    use approx::assert_relative_eq;

    fn rademacher_seq(n: usize) -> VectorSequenceSpec<f64> {
        VectorSequenceSpec::iid(VectorSummand::Discrete { atoms: vec![(vec![-1.0], 0.5), (vec![1.0], 0.5)] }, n).unwrap()
    }

    #[test]
    fn one_dimensional_examples() {
        let cfg = L1SphereSearchConfig::default();
        let seq = rademacher_seq(4);
        let r2 = integral_rep_bound(&seq, 4.0, 2, &cfg).unwrap();
        assert_eq!(r2.bound.c1, 1.0);
        assert_eq!(r2.tail_sup.value, 0.0);
        let r3 = integral_rep_bound(&seq, 8.0, 3, &cfg).unwrap();
        assert_eq!(r3.bound.c1, 8.0);
        assert_eq!(integral_rep_bound(&seq, 0.0, 2, &cfg).unwrap().bound.c1, 0.0);
        assert!(integral_rep_bound(&seq, 1.0, 4, &cfg).is_err());
    }

    #[test]
    fn barron_examples() {
        let cfg = L1SphereSearchConfig::default();
        let seq = rademacher_seq(4);
        let cos2 = FourierAtomicSpec::cosine(vec![2.0]).unwrap();
        assert_eq!(v_norm(&cos2, 2).unwrap(), 4.0);
        assert_relative_eq!(barron_bound(&cos2, &seq, 2, &cfg).unwrap().bound.c1, 2.0, epsilon = 1e-12);
        let wide = FourierAtomicSpec::cosine(vec![1.0, 1.0]).unwrap();
        assert!(matches!(barron_bound(&wide, &seq, 2, &cfg), Err(Error::DimensionMismatch { .. })));
        let flat = FourierAtomicSpec::new(vec![FourierAtom::new(vec![0.0], 1.0, 0.0)]).unwrap();
        for s in [2, 3] {
            assert_eq!(barron_bound(&flat, &seq, s, &cfg).unwrap().bound.c1, 0.0);
        }
    }

    #[test]
    fn one_dimensional_search_matches_two_point_evaluation() {
        let cfg = L1SphereSearchConfig::default();
        let seq = VectorSequenceSpec::new(
            1,
            vec![
                VectorSummand::Discrete { atoms: vec![(vec![-3.0], 0.25), (vec![1.0], 0.75)] },
                VectorSummand::Discrete { atoms: vec![(vec![-0.5], 0.5), (vec![0.5], 0.5)] },
            ],
        )
        .unwrap();
        for s in [2, 3] {
            let r = integral_rep_bound(&seq, 1.0, s, &cfg).unwrap();
            let (t1, b1): (f64, f64) = objectives(&seq, s, &[1.0]).unwrap();
            let (t2, b2) = objectives(&seq, s, &[-1.0]).unwrap();
            let lead = if s == 2 { 1.0 } else { 2.0 };
            assert_relative_eq!(r.bound.c1, lead * (t1.max(t2) + b1.max(b2)), epsilon = 1e-12);
        }
    }

    #[test]
    fn reports_atom_directions() {
        let cfg = L1SphereSearchConfig::default();
        let x = VectorSummand::Discrete {
            atoms: vec![(vec![1.0, 0.0], 0.25), (vec![-1.0, 0.0], 0.25), (vec![0.0, 1.0], 0.25), (vec![0.0, -1.0], 0.25)],
        };
        let seq = VectorSequenceSpec::iid(x, 3).unwrap();
        let f = FourierAtomicSpec::cosine(vec![1.0, 2.0]).unwrap();
        let r = barron_bound(&f, &seq, 3, &cfg).unwrap();
        assert_eq!(r.atom_directions.len(), 2);
        for dv in &r.atom_directions {
            assert!(dv.tail <= r.tail_sup.value + 1e-12);
            assert!(dv.body <= r.body_sup.value + 1e-12);
        }
        assert!(r.bound.is_consistent(1e-12));
    }
}
