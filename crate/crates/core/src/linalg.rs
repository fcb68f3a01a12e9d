//! Small dense symmetric matrices.
//!
//! Dimensions here are those of the random vectors (a handful), so a cyclic
//! Jacobi eigensolver is both exact enough and simple.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Scalar;

/// Row-major symmetric matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<S>>", into = "Vec<Vec<S>>")]
#[serde(bound = "S: Scalar")]
pub struct SymMatrix<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> SymMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![S::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![S::one(); dim])
    }

    pub fn diagonal(diag: &[S]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = v;
        }
        m
    }

    /// Builds from rows, symmetrizing. Rejects non-square input and
    /// asymmetry beyond 1e-9 relative to the largest entry.
    pub fn from_rows(rows: &[Vec<S>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let mut m = Self::zeros(dim);
        let mut scale = S::zero();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::InvalidArgument("non-finite matrix entry".into()));
                }
                scale = scale.max(v.abs());
                m.data[i * dim + j] = v;
            }
        }
        let tol = S::tol(1e-9) * scale.max(S::one());
        for i in 0..dim {
            for j in (i + 1)..dim {
                let (a, b) = (m.get(i, j), m.get(j, i));
                if (a - b).abs() > tol {
                    return Err(Error::InvalidArgument(format!("matrix not symmetric at ({i},{j})")));
                }
                let avg = (a + b) / S::lit(2.0);
                m.set(i, j, avg);
            }
        }
        Ok(m)
    }

    /// Outer product x xᵀ.
    pub fn outer(x: &[S]) -> Self {
        let d = x.len();
        let mut m = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.data[i * d + j] = x[i] * x[j];
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.dim + j]
    }

    /// Sets both (i, j) and (j, i).
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.dim).map(<[S]>::to_vec).collect()
    }

    pub fn add_scaled(&mut self, other: &Self, w: S) {
        assert_eq!(self.dim, other.dim);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = *a + w * b;
        }
    }

    pub fn scaled(&self, w: S) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&v| v * w).collect() }
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        self.data.chunks(self.dim).map(|row| row.iter().zip(x).map(|(&a, &b)| a * b).sum()).collect()
    }

    pub fn matmul(&self, other: &Self) -> Vec<Vec<S>> {
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|k| self.get(i, k) * other.get(k, j)).sum()).collect())
            .collect()
    }

    /// self · m · self for symmetric self.
    pub fn congruence(&self, m: &Self) -> Self {
        let left = self.matmul(m);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in i..d {
                let v: S = (0..d).map(|k| left[i][k] * self.get(k, j)).sum();
                out.set(i, j, v);
            }
        }
        out
    }

    /// xᵀ M x
    pub fn quad_form(&self, x: &[S]) -> S {
        x.iter().zip(self.mul_vec(x)).map(|(&a, b)| a * b).sum()
    }

    pub fn trace(&self) -> S {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Eigenvalues (ascending) and eigenvectors (columns of the returned
    /// row-major matrix, matching eigenvalue order) by cyclic Jacobi.
    pub fn eigh(&self) -> (Vec<S>, Vec<Vec<S>>) {
        let n = self.dim;
        let mut a: Vec<Vec<S>> = self.rows();
        let mut v: Vec<Vec<S>> = SymMatrix::identity(n).rows();
        let two = S::lit(2.0);
        for _sweep in 0..100 {
            let off: S = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[i][j] * a[i][j])
                .sum();
            let diag: S = (0..n).map(|i| a[i][i] * a[i][i]).sum();
            if off <= S::epsilon() * S::epsilon() * diag || off == S::zero() {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    if a[p][q] == S::zero() {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (two * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + S::one()).sqrt());
                    let c = S::one() / (t * t + S::one()).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[k][p], a[k][q]);
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[p][k], a[q][k]);
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                    for row in v.iter_mut() {
                        let (vkp, vkq) = (row[p], row[q]);
                        row[p] = c * vkp - s * vkq;
                        row[q] = s * vkp + c * vkq;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
        let values = order.iter().map(|&i| a[i][i]).collect();
        let vectors = (0..n).map(|r| order.iter().map(|&c| v[r][c]).collect()).collect();
        (values, vectors)
    }

    pub fn min_eigenvalue(&self) -> S {
        self.eigh().0[0]
    }

    /// Applies g to the spectrum: V g(Λ) Vᵀ.
    fn spectral_map(&self, g: impl Fn(S) -> S) -> Self {
        let (vals, vecs) = self.eigh();
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v: S = (0..n).map(|k| vecs[i][k] * g(vals[k]) * vecs[j][k]).sum();
                out.set(i, j, v);
            }
        }
        out
    }

    /// Symmetric positive square root. Fails when the smallest eigenvalue is
    /// below −1e-12·scale.
    pub fn sqrt_psd(&self) -> Result<Self> {
        let (vals, _) = self.eigh();
        let scale = vals.iter().fold(S::one(), |m, v| m.max(v.abs()));
        if vals[0] < -S::tol(1e-12) * scale {
            return Err(Error::NotPositiveDefinite(vals[0].as_f64()));
        }
        Ok(self.spectral_map(|l| l.max(S::zero()).sqrt()))
    }

    /// Inverse symmetric positive square root C^{-1} with C² = self.
    pub fn whitening(&self) -> Result<Self> {
        let min = self.min_eigenvalue();
        if !(min > S::tol(1e-10)) {
            return Err(Error::NotPositiveDefinite(min.as_f64()));
        }
        Ok(self.spectral_map(|l| S::one() / l.sqrt()))
    }

    /// √(aᵀ M a)
    pub fn sigma_norm(&self, a: &[S]) -> Result<S> {
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.len() });
        }
        if a.iter().all(|v| *v == S::zero()) {
            return Err(Error::InvalidArgument("direction must be non-zero".into()));
        }
        Ok(self.quad_form(a).max(S::zero()).sqrt())
    }
}

impl<S: Scalar> TryFrom<Vec<Vec<S>>> for SymMatrix<S> {
    type Error = Error;
    fn try_from(rows: Vec<Vec<S>>) -> Result<Self> {
        Self::from_rows(&rows)
    }
}

impl<S: Scalar> From<SymMatrix<S>> for Vec<Vec<S>> {
    fn from(m: SymMatrix<S>) -> Self {
        m.rows()
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn norm1<S: Scalar>(a: &[S]) -> S {
    a.iter().map(|v| v.abs()).sum()
}

pub fn norm2<S: Scalar>(a: &[S]) -> S {
    dot(a, a).sqrt()
}
