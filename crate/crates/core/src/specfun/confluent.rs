//! Tricomi's confluent function and the fractional-index Hermite function.

use super::gamma::{cos_pi, gamma, rgamma, sin_pi};
use super::series::hyp1f1;
use crate::error::{Error, Result};
use crate::precision::PrecisionConfig;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Tricomi U(a, b, z) through the two-Kummer decomposition. Requires a
/// non-integer `b` and `z >= 0`.
pub fn kummer_u(a: f64, b: f64, z: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if b.fract() == 0.0 {
        return Err(Error::IntegerB(b));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("kummer_u needs z >= 0, got {z}")));
    }
    let first = gamma(1.0 - b)? * rgamma(a + 1.0 - b) * hyp1f1(a, b, z, cfg)?.value;
    let w2 = gamma(b - 1.0)? * rgamma(a);
    if w2 == 0.0 || z == 0.0 && b < 1.0 {
        return Ok(first);
    }
    let second = w2 * z.powf(1.0 - b) * hyp1f1(a + 1.0 - b, 2.0 - b, z, cfg)?.value;
    Ok(first + second)
}

/// Hermite function of real order `alpha` in [0, 1], as the entire
/// combination `e^{x^2} 2^a / sqrt(pi) [cos(pi a/2) G((1+a)/2) 1F1((1+a)/2; 1/2; -x^2)
/// + 2x sin(pi a/2) G(1+a/2) 1F1(1+a/2; 3/2; -x^2)]`.
///
/// `a G(a/2)` is carried as `2 G(1+a/2)` so the order-zero limit is regular.
pub fn hermite_fractional(alpha: f64, x: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if !x.is_finite() {
        return Err(Error::domain("hermite_fractional needs finite x"));
    }
    let z = -x * x;
    let c = cos_pi(alpha / 2.0);
    let s = sin_pi(alpha / 2.0);
    let even = if c == 0.0 {
        0.0
    } else {
        c * gamma((1.0 + alpha) / 2.0)? * hyp1f1((1.0 + alpha) / 2.0, 0.5, z, cfg)?.value
    };
    let odd = if s == 0.0 || x == 0.0 {
        0.0
    } else {
        2.0 * x * s * gamma(1.0 + alpha / 2.0)? * hyp1f1(1.0 + alpha / 2.0, 1.5, z, cfg)?.value
    };
    Ok((x * x).exp() * 2f64.powf(alpha) / SQRT_PI * (even + odd))
}

/// The same function through the positive-argument Kummer form
/// `2^a [G(1/2)/G((1-a)/2) 1F1(-a/2; 1/2; x^2) + G(-1/2)/G(-a/2) x 1F1((1-a)/2; 3/2; x^2)]`.
/// Independent of [`hermite_fractional`] apart from the 1F1 kernel.
#[cfg(test)]
pub(crate) fn hermite_fractional_kummer(alpha: f64, x: f64, cfg: &PrecisionConfig) -> Result<f64> {
    let z = x * x;
    let even = SQRT_PI * rgamma((1.0 - alpha) / 2.0) * hyp1f1(-alpha / 2.0, 0.5, z, cfg)?.value;
    let odd =
        -2.0 * SQRT_PI * rgamma(-alpha / 2.0) * x * hyp1f1((1.0 - alpha) / 2.0, 1.5, z, cfg)?.value;
    Ok(2f64.powf(alpha) * (even + odd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn u_at_origin() {
        let u = kummer_u(-0.25, 0.5, 0.0, &cfg()).unwrap();
        assert!(close(u, gamma(0.5).unwrap() / gamma(0.25).unwrap(), 1e-14));
    }

    #[test]
    fn u_polynomial_case() {
        // U(-1, b, z) = z - b
        let u = kummer_u(-1.0, 0.5, 2.0, &cfg()).unwrap();
        assert!(close(u, 1.5, 1e-14), "{u}");
    }

    #[test]
    fn u_rejects_integer_b() {
        assert_eq!(kummer_u(0.3, 2.0, 1.0, &cfg()), Err(Error::IntegerB(2.0)));
    }

    #[test]
    fn hermite_integer_orders() {
        for i in 0..=60 {
            let x = -3.0 + 0.1 * i as f64;
            let h0 = hermite_fractional(0.0, x, &cfg()).unwrap();
            let h1 = hermite_fractional(1.0, x, &cfg()).unwrap();
            assert!(close(h0, 1.0, 1e-13), "H0({x}) = {h0}");
            assert!(close(h1, 2.0 * x, 1e-13), "H1({x}) = {h1}");
        }
        assert!(close(
            hermite_fractional(1.0, 1.3, &cfg()).unwrap(),
            2.6,
            1e-14
        ));
    }

    #[test]
    fn hermite_at_zero() {
        let h = hermite_fractional(0.5, 0.0, &cfg()).unwrap();
        let expect = 2f64.sqrt() * (PI / 4.0).cos() * gamma(0.75).unwrap() / SQRT_PI;
        assert!(close(h, expect, 1e-14));
    }

    #[test]
    fn hermite_matches_u_route() {
        for &(a, x) in &[(0.6, 0.8), (0.3, 0.2), (0.9, 2.5), (0.1, 1.7)] {
            let h = hermite_fractional(a, x, &cfg()).unwrap();
            let u = 2f64.powf(a) * kummer_u(-a / 2.0, 0.5, x * x, &cfg()).unwrap();
            assert!(close(h, u, 1e-12), "a={a} x={x}: {h} vs {u}");
        }
    }

    #[test]
    fn hermite_negative_argument() {
        for &(a, x) in &[(0.3, -0.9), (0.7, -2.0), (0.5, -3.0)] {
            let h = hermite_fractional(a, x, &cfg()).unwrap();
            let k = hermite_fractional_kummer(a, x, &cfg()).unwrap();
            assert!(close(h, k, 1e-12), "a={a} x={x}: {h} vs {k}");
        }
    }
}
