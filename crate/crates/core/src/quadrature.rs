//! Gauss–Jacobi and Gauss–Legendre rules.
//!
//! Nodes start from the Golub–Welsch eigenvalues of the Jacobi matrix and
//! are polished by Newton steps on the three-term recurrence. Weights come
//! from the Christoffel formula `w_i ∝ 1 / ((1 - x_i^2) P_n'(x_i)^2)`,
//! normalised by the zeroth moment, which keeps small weights accurate to
//! full relative precision.

use std::collections::HashMap;
use std::ops::{Add, Mul};
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::specfun::gamma;

/// Nodes and weights on [-1, 1] for the weight `(1 - x)^a (1 + x)^b`.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

type Key = (usize, u64, u64);

fn cache() -> &'static RwLock<HashMap<Key, Arc<Rule>>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, Arc<Rule>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Gauss–Jacobi rule with `n` nodes. Rules are immutable once built and
/// shared between callers.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Result<Arc<Rule>> {
    if n == 0 {
        return Err(Error::InvalidConfig(
            "quadrature needs at least one node".into(),
        ));
    }
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::domain(format!(
            "Jacobi exponents ({a}, {b}) must exceed -1"
        )));
    }
    let key = (n, a.to_bits(), b.to_bits());
    if let Some(rule) = cache().read().ok().and_then(|c| c.get(&key).cloned()) {
        return Ok(rule);
    }
    let rule = Arc::new(build_jacobi(n, a, b)?);
    if let Ok(mut c) = cache().write() {
        c.entry(key).or_insert_with(|| rule.clone());
    }
    Ok(rule)
}

pub fn gauss_legendre(n: usize) -> Result<Arc<Rule>> {
    gauss_jacobi(n, 0.0, 0.0)
}

/// Recurrence coefficients of the monic Jacobi polynomials:
/// diagonal `alpha_k` and squared off-diagonal `beta_k` (k >= 1).
fn recurrence(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    let mut off2 = Vec::with_capacity(n.saturating_sub(1));
    diag.push((b - a) / (ab + 2.0));
    for k in 1..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        diag.push((b * b - a * a) / (s * (s + 2.0)));
    }
    for k in 1..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let v = if k == 1 {
            // the general formula is 0/0 when a + b = -1
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        off2.push(v);
    }
    (diag, off2)
}

/// P_n^{(a,b)}(x) and (1 - x^2) P_n'(x) by the standard recurrence.
fn jacobi_eval(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    let ab = a + b;
    let mut p0 = 1.0;
    let mut p1 = (a + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        let c1 = 2.0 * kf * (kf + ab) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * s;
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let s = 2.0 * nf + ab;
    let d = (nf * ((a - b) - s * x) * p1 + 2.0 * (nf + a) * (nf + b) * p0) / s;
    (p1, d)
}

fn build_jacobi(n: usize, a: f64, b: f64) -> Result<Rule> {
    let (diag, off2) = recurrence(n, a, b);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
    }
    for (i, v) in off2.iter().enumerate() {
        let s = v.sqrt();
        m[(i, i + 1)] = s;
        m[(i + 1, i)] = s;
    }
    let eig = SymmetricEigen::new(m);
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    nodes.sort_by(|p, q| p.total_cmp(q));

    let mut raw = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..8 {
            let (p, d) = jacobi_eval(n, a, b, *x);
            let one_m_x2 = (1.0 - *x) * (1.0 + *x);
            if d == 0.0 || one_m_x2 <= 0.0 {
                break;
            }
            let dx = p * one_m_x2 / d;
            let next = (*x - dx).clamp(-1.0, 1.0);
            let done = (next - *x).abs() <= 4.0 * f64::EPSILON * next.abs().max(1e-300);
            *x = next;
            if done {
                break;
            }
        }
        // the last Newton correction puts the distances to the endpoints at
        // full relative accuracy, which the endpoint weights are sensitive to
        let (p, d) = jacobi_eval(n, a, b, *x);
        let one_m_x2 = (1.0 - *x) * (1.0 + *x);
        let dx = if d == 0.0 { 0.0 } else { p * one_m_x2 / d };
        let plus = (1.0 + *x) - dx;
        let minus = (1.0 - *x) + dx;
        let dp = d / one_m_x2;
        raw.push(1.0 / (plus * minus * dp * dp));
    }
    let mu0 = 2f64.powf(a + b + 1.0) * gamma(a + 1.0)? * gamma(b + 1.0)? / gamma(a + b + 2.0)?;
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w * mu0 / total).collect();
    if nodes.iter().chain(&weights).any(|v| !v.is_finite()) {
        return Err(Error::QuadratureDivergence(format!(
            "Gauss-Jacobi rule n={n} a={a} b={b} is not finite"
        )));
    }
    Ok(Rule { nodes, weights })
}

/// `∫_0^1 (1 - t)^p t^q g(t) dt` with an `n`-node Gauss–Jacobi rule.
pub fn integrate_beta01<T, F>(n: usize, p: f64, q: f64, mut g: F) -> Result<T>
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    F: FnMut(f64) -> Result<T>,
{
    let rule = gauss_jacobi(n, p, q)?;
    let scale = 2f64.powf(-(p + q + 1.0));
    let mut acc = T::default();
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let t = (1.0 + x) / 2.0;
        acc = acc + g(t)? * (w * scale);
    }
    Ok(acc)
}

/// `∫_lo^hi g(t) dt` with an `n`-node Gauss–Legendre rule.
pub fn integrate_legendre<T, F>(n: usize, lo: f64, hi: f64, mut g: F) -> Result<T>
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    F: FnMut(f64) -> Result<T>,
{
    let rule = gauss_legendre(n)?;
    let half = (hi - lo) / 2.0;
    let mid = (hi + lo) / 2.0;
    let mut acc = T::default();
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc = acc + g(mid + half * x)? * (w * half);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn legendre_small_rules() {
        let r = gauss_legendre(2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-15 && (r.nodes[1] - x).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_moment() {
        for &(a, b) in &[
            (0.0, 0.0),
            (-0.5, 0.0),
            (0.0, -0.9),
            (-0.5, -0.5),
            (2.5, 0.3),
            (-0.3, -0.7),
        ] {
            let r = gauss_jacobi(64, a, b).unwrap();
            let mu0 = 2f64.powf(a + b + 1.0) * gamma(a + 1.0).unwrap() * gamma(b + 1.0).unwrap()
                / gamma(a + b + 2.0).unwrap();
            let s: f64 = r.weights.iter().sum();
            assert!((s - mu0).abs() < 1e-14 * mu0);
            assert!(r.weights.iter().all(|w| *w > 0.0));
            assert!(r.nodes.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn chebyshev_nodes() {
        // a = b = -1/2 gives cos((2i-1)pi/2n) with equal weights pi/n
        let n = 16;
        let r = gauss_jacobi(n, -0.5, -0.5).unwrap();
        for (i, x) in r.nodes.iter().rev().enumerate() {
            let e = ((2 * i + 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos();
            assert!((x - e).abs() < 1e-15);
        }
        for w in &r.weights {
            assert!((w - std::f64::consts::PI / n as f64).abs() < 1e-14);
        }
    }

    proptest! {
        #[test]
        fn beta_moments_exact(p in -0.95f64..2.0, q in -0.95f64..2.0, k in 0u32..20) {
            // ∫ (1-t)^p t^(q+k) dt = B(p+1, q+k+1); nodes within a few ulp of a
            // strongly singular endpoint limit the weights to about 1e-12
            // relative there
            let v: f64 = integrate_beta01(16, p, q, |t| Ok(t.powi(k as i32))).unwrap();
            let kf = f64::from(k);
            let exact = gamma(p + 1.0).unwrap() * gamma(q + kf + 1.0).unwrap()
                / gamma(p + q + kf + 2.0).unwrap();
            let tol = if p.min(q) < -0.5 { 1e-11 } else { 1e-13 };
            prop_assert!((v - exact).abs() <= tol * exact, "{}", (v - exact).abs() / exact);
        }
    }
}
