//! Gaussian expectations by quadrature.
//!
//! Smooth integrands use Gauss–Hermite with order doubling. Integrands with
//! kinks or jumps at known points are split there and integrated with
//! composite Gauss–Legendre panels, refined by halving the panel width.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::scalar::CompensatedSum;
use crate::Scalar;

/// Nodes and weights for ∫ f(x) w(x) dx.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Standard-normal integration beyond this many standard deviations is
/// below f64 underflow for polynomially growing integrands.
const TAIL_CUTOFF: f64 = 40.0;
const PANEL_RULE_ORDER: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub order: usize,
    pub max_order: usize,
    pub rel_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { order: 128, max_order: 1024, rel_tol: 1e-10 }
    }
}

fn cache() -> &'static Mutex<HashMap<(char, usize), Arc<Rule>>> {
    static CACHE: OnceLock<Mutex<HashMap<(char, usize), Arc<Rule>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached(kind: char, n: usize, build: impl FnOnce(usize) -> Rule) -> Arc<Rule> {
    if let Some(r) = cache().lock().unwrap().get(&(kind, n)) {
        return r.clone();
    }
    let rule = Arc::new(build(n));
    cache().lock().unwrap().insert((kind, n), rule.clone());
    rule
}

/// Gauss–Hermite rule for the weight e^{-x²}.
pub fn gauss_hermite(n: usize) -> Arc<Rule> {
    assert!(n >= 1);
    cached('h', n, build_hermite)
}

/// Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> Arc<Rule> {
    assert!(n >= 1);
    cached('l', n, build_legendre)
}

// Eigenvalues of the Hermite Jacobi matrix (zero diagonal, off-diagonal
// √(k/2)) by Sturm-sequence bisection, then Christoffel weights from the
// orthonormal recurrence with running rescaling to avoid overflow.
fn build_hermite(n: usize) -> Rule {
    let beta2: Vec<f64> = (1..n).map(|k| k as f64 / 2.0).collect();
    let count_below = |x: f64| -> usize {
        let mut count = 0;
        let mut q = -x;
        if q < 0.0 {
            count += 1;
        }
        for &b2 in &beta2 {
            let prev = if q == 0.0 { f64::MIN_POSITIVE } else { q };
            q = -x - b2 / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    let upper = (2.0 * n as f64 + 1.0).sqrt() + 1.0;
    let half = n / 2;
    let mut positive = Vec::with_capacity(half);
    // The k-th largest eigenvalue, k = 0..half.
    for k in 0..half {
        let target = n - k; // count_below(x) >= target  <=>  x > λ_(n-k)
        let (mut lo, mut hi) = (0.0_f64, upper);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if count_below(mid) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        positive.push(0.5 * (lo + hi));
    }
    let mut nodes: Vec<f64> = positive.iter().map(|x| -x).collect();
    if n % 2 == 1 {
        nodes.push(0.0);
    }
    nodes.extend(positive.iter().rev());

    let sqrt_beta: Vec<f64> = (0..=n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let weights = nodes
        .iter()
        .map(|&x| {
            let mut p_prev = 0.0_f64;
            let mut p = PI.powf(-0.25);
            let mut sum = p * p;
            let mut log_scale = 0.0_f64;
            for k in 0..n - 1 {
                let next = (x * p - sqrt_beta[k] * p_prev) / sqrt_beta[k + 1];
                p_prev = p;
                p = next;
                sum += p * p;
                if p.abs() > 1e150 {
                    p *= 1e-150;
                    p_prev *= 1e-150;
                    sum *= 1e-300;
                    log_scale += 150.0 * std::f64::consts::LN_10;
                }
            }
            (-(sum.ln() + 2.0 * log_scale)).exp()
        })
        .collect();
    Rule { nodes, weights }
}

fn build_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let z_new = z - p1 / dp;
            let done = (z_new - z).abs() < 1e-16;
            z = z_new;
            if done {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

/// E g(Z) for standard normal Z using an n-point Gauss–Hermite rule.
fn hermite_standard<S: Scalar>(g: &impl Fn(S) -> S, n: usize) -> (S, S) {
    let rule = gauss_hermite(n);
    let norm = S::lit(PI.sqrt().recip());
    let mut acc = CompensatedSum::new();
    let mut mass = CompensatedSum::new();
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        if w == 0.0 {
            continue;
        }
        let v = g(S::lit(std::f64::consts::SQRT_2 * x));
        acc.add(S::lit(w) * v);
        mass.add(S::lit(w) * v.abs());
    }
    (acc.value() * norm, mass.value() * norm)
}

/// ∫_a^b g(z) φ(z) dz with `panels` Gauss–Legendre panels.
fn legendre_segment<S: Scalar>(g: &impl Fn(S) -> S, a: f64, b: f64, panels: usize) -> (S, S) {
    let rule = gauss_legendre(PANEL_RULE_ORDER);
    let h = (b - a) / panels as f64;
    let mut acc = CompensatedSum::new();
    let mut mass = CompensatedSum::new();
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let z = mid + 0.5 * h * x;
            let dens = (-0.5 * z * z).exp() / (2.0 * PI).sqrt();
            if dens == 0.0 {
                continue;
            }
            let v = g(S::lit(z));
            let wt = S::lit(0.5 * h * w * dens);
            acc.add(wt * v);
            mass.add(wt * v.abs());
        }
    }
    (acc.value(), mass.value())
}

/// E f(σZ) for Z ~ N(0, 1).
///
/// `breakpoints` lists points (in the units of f's argument) where f is
/// non-smooth. Without breakpoints the Gauss–Hermite order starts at
/// `cfg.order` and doubles up to `cfg.max_order` until successive values
/// agree to `cfg.rel_tol`. With breakpoints the real line is split there and
/// each piece is integrated with composite Gauss–Legendre panels whose width
/// is halved until the same tolerance is met.
pub fn gaussian_expectation<S: Scalar, F: Fn(S) -> S>(
    f: F,
    sigma: S,
    breakpoints: &[S],
    cfg: &QuadratureConfig,
) -> Result<S> {
    if !(sigma > S::zero()) || !sigma.is_finite() {
        return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
    }
    let g = |z: S| f(sigma * z);
    let tol = S::tol(cfg.rel_tol);
    let converged = |prev: S, cur: S, mass: S| (cur - prev).abs() <= tol * mass.max(S::min_positive_value());
    let check = |v: S| {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Numeric("non-finite integrand value".into()))
        }
    };

    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .map(|b| (*b / sigma).as_f64())
        .filter(|z| z.abs() < TAIL_CUTOFF)
        .collect();
    if cuts.is_empty() {
        let mut n = cfg.order.max(2);
        let (mut prev, _) = hermite_standard(&g, n);
        check(prev)?;
        while n < cfg.max_order {
            n = (2 * n).min(cfg.max_order);
            let (cur, mass) = hermite_standard(&g, n);
            check(cur)?;
            if converged(prev, cur, mass) {
                return Ok(cur);
            }
            prev = cur;
        }
        return Err(Error::Numeric(format!(
            "Gauss-Hermite did not converge by order {}; supply breakpoints for non-smooth integrands",
            cfg.max_order
        )));
    }

    cuts.push(-TAIL_CUTOFF);
    cuts.push(TAIL_CUTOFF);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();
    let integrate = |per_unit: usize| -> (S, S) {
        let mut acc = CompensatedSum::new();
        let mut mass = CompensatedSum::new();
        for w in cuts.windows(2) {
            let panels = ((w[1] - w[0]) * per_unit as f64).ceil().max(1.0) as usize;
            let (v, m) = legendre_segment(&g, w[0], w[1], panels);
            acc.add(v);
            mass.add(m);
        }
        (acc.value(), mass.value())
    };
    let mut per_unit = 1;
    let (mut prev, _) = integrate(per_unit);
    check(prev)?;
    for _ in 0..12 {
        per_unit *= 2;
        let (cur, mass) = integrate(per_unit);
        check(cur)?;
        if converged(prev, cur, mass) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Numeric("piecewise Gauss-Legendre did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hermite_weights_sum_to_sqrt_pi() {
        for n in [1, 2, 5, 64, 128, 1024] {
            let r = gauss_hermite(n);
            let s: f64 = r.weights.iter().sum();
            assert_abs_diff_eq!(s, PI.sqrt(), epsilon = 1e-12);
            assert_eq!(r.nodes.len(), n);
        }
    }

    #[test]
    fn hermite_small_order_nodes() {
        // H_2 roots ±1/√2; H_3 roots 0, ±√(3/2).
        let r2 = gauss_hermite(2);
        assert_abs_diff_eq!(r2.nodes[1], 0.5f64.sqrt(), epsilon = 1e-15);
        let r3 = gauss_hermite(3);
        assert_abs_diff_eq!(r3.nodes[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r3.nodes[2], 1.5f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(r3.weights[1], 2.0 * PI.sqrt() / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn hermite_integrates_even_moments() {
        // E Z^{2k} = (2k−1)!!
        let cfg = QuadratureConfig::default();
        let m4 = gaussian_expectation(|x: f64| x.powi(4), 1.0, &[], &cfg).unwrap();
        assert_abs_diff_eq!(m4, 3.0, epsilon = 1e-12);
        let m10 = gaussian_expectation(|x: f64| x.powi(10), 1.0, &[], &cfg).unwrap();
        assert_abs_diff_eq!(m10, 945.0, epsilon = 1e-9);
    }

    #[test]
    fn legendre_exact_for_polynomials() {
        let r = gauss_legendre(PANEL_RULE_ORDER);
        let s: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(38)).sum();
        assert_abs_diff_eq!(s, 2.0 / 39.0, epsilon = 1e-15);
    }

    #[test]
    fn reference_expectations() {
        let cfg = QuadratureConfig::default();
        let sq = gaussian_expectation(|x: f64| x * x, 1.0, &[], &cfg).unwrap();
        assert_abs_diff_eq!(sq, 1.0, epsilon = 1e-13);
        let relu = gaussian_expectation(|x: f64| x.max(0.0), 1.0, &[0.0], &cfg).unwrap();
        assert_abs_diff_eq!(relu, 0.398_942_280_401_432_7, epsilon = 1e-12);
        let cube = gaussian_expectation(|x: f64| x.abs().powi(3), 1.0, &[0.0], &cfg).unwrap();
        assert_abs_diff_eq!(cube, 2.0 * (2.0 / PI).sqrt(), epsilon = 1e-12);
        let step = gaussian_expectation(|x: f64| if x >= 1.0 { 1.0 } else { 0.0 }, 2.0, &[1.0], &cfg)
            .unwrap();
        assert_abs_diff_eq!(step, crate::special::normal_sf(0.5), epsilon = 1e-13);
    }

    #[test]
    fn scale_parameter() {
        let cfg = QuadratureConfig::default();
        let v = gaussian_expectation(|x: f64| x * x, 3.0, &[], &cfg).unwrap();
        assert_abs_diff_eq!(v, 9.0, epsilon = 1e-11);
        assert!(gaussian_expectation(|x: f64| x, 0.0, &[], &cfg).is_err());
    }

    #[test]
    fn smooth_nonpolynomial() {
        // E cos(ωZ) = e^{-ω²/2}
        let cfg = QuadratureConfig::default();
        let v = gaussian_expectation(|x: f64| (2.0 * x).cos(), 1.0, &[], &cfg).unwrap();
        assert_abs_diff_eq!(v, (-2.0f64).exp(), epsilon = 1e-13);
    }

    #[test]
    fn single_precision_instantiation() {
        let cfg = QuadratureConfig::default();
        let v = gaussian_expectation(|x: f32| x.max(0.0), 1.0f32, &[0.0], &cfg).unwrap();
        assert!((v - 0.398_942_3).abs() < 1e-5);
    }
}
