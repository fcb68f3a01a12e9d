use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, norm1};
use crate::Scalar;

/// Frequency ω with complex amplitude re + i·im.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct FourierAtom<S> {
    pub omega: Vec<S>,
    pub re: S,
    pub im: S,
}

impl<S: Scalar> FourierAtom<S> {
    pub fn new(omega: Vec<S>, re: S, im: S) -> Self {
        Self { omega, re, im }
    }

    /// |c|
    pub fn modulus(&self) -> S {
        self.re.hypot(self.im)
    }
}

/// f(x) = Σ_j Re(c_j e^{i ω_jᵀx}) for finitely many atoms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct FourierAtomicSpec<S> {
    pub atoms: Vec<FourierAtom<S>>,
}

impl<S: Scalar> FourierAtomicSpec<S> {
    pub fn new(atoms: Vec<FourierAtom<S>>) -> Result<Self> {
        let spec = Self { atoms };
        spec.validate()?;
        Ok(spec)
    }

    /// cos(ωᵀx) as the atoms (ω, ½) and (−ω, ½).
    pub fn cosine(omega: Vec<S>) -> Result<Self> {
        let half = S::lit(0.5);
        let neg = omega.iter().map(|w| -*w).collect();
        Self::new(vec![FourierAtom::new(omega, half, S::zero()), FourierAtom::new(neg, half, S::zero())])
    }

    pub fn validate(&self) -> Result<()> {
        let Some(first) = self.atoms.first() else {
            return Err(Error::InvalidArgument("Fourier spec has no atoms".into()));
        };
        if first.omega.is_empty() {
            return Err(Error::InvalidArgument("frequency vectors must be non-empty".into()));
        }
        for a in &self.atoms {
            if a.omega.len() != first.omega.len() {
                return Err(Error::DimensionMismatch { expected: first.omega.len(), found: a.omega.len() });
            }
            if a.omega.iter().any(|w| !w.is_finite()) || !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::InvalidArgument("Fourier atom has non-finite entries".into()));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> Option<usize> {
        self.atoms.first().map(|a| a.omega.len())
    }

    pub fn eval(&self, x: &[S]) -> S {
        self.atoms
            .iter()
            .map(|a| {
                let phase = dot(&a.omega, x);
                a.re * phase.cos() - a.im * phase.sin()
            })
            .sum()
    }

    /// Σ|c_j|, a bound on ‖f‖∞.
    pub fn amplitude_sum(&self) -> S {
        self.atoms.iter().map(FourierAtom::modulus).sum()
    }

    /// Unit-ℓ1 directions ω_j/‖ω_j‖₁ of the non-zero frequencies.
    pub fn directions(&self) -> Vec<Vec<S>> {
        self.atoms
            .iter()
            .filter_map(|a| {
                let n = norm1(&a.omega);
                (n > S::zero()).then(|| a.omega.iter().map(|w| *w / n).collect())
            })
            .collect()
    }
}

/// v_{f,s} = Σ_j ‖ω_j‖₁^s |c_j|
pub fn v_norm<S: Scalar>(f: &FourierAtomicSpec<S>, s: u32) -> Result<S> {
    if !(s == 2 || s == 3) {
        return Err(Error::InvalidArgument(format!("smoothness s = {s} must be 2 or 3")));
    }
    Ok(f.atoms.iter().map(|a| norm1(&a.omega).powi(s as i32) * a.modulus()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_norms() {
        let f = FourierAtomicSpec::cosine(vec![1.0, 1.0]).unwrap();
        assert_eq!(v_norm(&f, 2).unwrap(), 4.0);
        assert_eq!(v_norm(&f, 3).unwrap(), 8.0);
        assert!(v_norm(&f, 4).is_err());
        assert!((f.eval(&[0.3, 0.4]) - 0.7_f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn constant_has_zero_norm() {
        let f = FourierAtomicSpec::new(vec![FourierAtom::new(vec![0.0, 0.0], 2.0, 0.0)]).unwrap();
        assert_eq!(v_norm(&f, 2).unwrap(), 0.0);
        assert_eq!(v_norm(&f, 3).unwrap(), 0.0);
        assert_eq!(f.eval(&[5.0, -1.0]), 2.0);
        assert!(f.directions().is_empty());
    }

    #[test]
    fn homogeneous_in_amplitude() {
        let f = FourierAtomicSpec::new(vec![
            FourierAtom::new(vec![0.5, -2.0], 0.3, -0.4),
            FourierAtom::new(vec![1.0, 1.0], -1.0, 0.0),
        ])
        .unwrap();
        let g = FourierAtomicSpec::new(f.atoms.iter().map(|a| FourierAtom::new(a.omega.clone(), 3.0 * a.re, 3.0 * a.im)).collect()).unwrap();
        for s in [2, 3] {
            assert!((v_norm::<f64>(&g, s).unwrap() - 3.0 * v_norm(&f, s).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn imaginary_part_is_a_sine() {
        let f = FourierAtomicSpec::new(vec![FourierAtom::new(vec![2.0], 0.0, -1.0)]).unwrap();
        assert!((f.eval(&[0.3]) - 0.6_f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn json_form() {
        let f: FourierAtomicSpec<f64> = serde_json::from_str(r#"{"atoms":[{"omega":[1,2],"re":0.5,"im":0}]}"#).unwrap();
        assert_eq!(f.atoms[0].omega, vec![1.0, 2.0]);
        assert!(FourierAtomicSpec::<f64>::new(vec![]).is_err());
    }
}
