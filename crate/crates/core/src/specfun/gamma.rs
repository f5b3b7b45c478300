//! Gamma function, its reciprocal, and the Pochhammer symbol.

use std::f64::consts::PI;

use crate::error::{Error, Result};

// Stirling series applies from this argument on; smaller arguments are
// shifted up by the recurrence.
const STIRLING_MIN: f64 = 8.0;

// B_{2k} / (2k (2k - 1)), k = 1..10
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let y = x.rem_euclid(2.0);
    if y < 0.25 {
        (PI * y).sin()
    } else if y < 0.75 {
        (PI * (y - 0.5)).cos()
    } else if y < 1.25 {
        -(PI * (y - 1.0)).sin()
    } else if y < 1.75 {
        -(PI * (y - 1.5)).cos()
    } else {
        (PI * (y - 2.0)).sin()
    }
}

/// cos(πx) with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let y = x.rem_euclid(2.0);
    if y < 0.25 {
        (PI * y).cos()
    } else if y < 0.75 {
        -(PI * (y - 0.5)).sin()
    } else if y < 1.25 {
        -(PI * (y - 1.0)).cos()
    } else if y < 1.75 {
        (PI * (y - 1.5)).sin()
    } else {
        (PI * (y - 2.0)).cos()
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Error-free sum: `a + b = s + e` exactly.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Γ(z) for z >= STIRLING_MIN with z taken as exact.
fn stirling(z: f64) -> f64 {
    let r = 1.0 / (z * z);
    let series = STIRLING_COEFFS.iter().rev().fold(0.0, |acc, c| acc * r + c) / z;
    // halves of the power keep the intermediate finite up to 171
    let half = z.powf((z - 0.5) / 2.0);
    SQRT_2PI * half * (half * (-z).exp()) * series.exp()
}

/// Γ(y + e) for y >= 1/2, where `e` is a rounding residue far below ulp(y).
///
/// Shifted arguments are formed with an error-free sum and the residues are
/// applied to first order through the digamma function, so the only
/// rounding left is in the shift product and the elementary functions.
fn gamma_positive(y: f64, e: f64) -> f64 {
    if y >= STIRLING_MIN {
        let psi = y.ln() - 0.5 / y;
        return stirling(y) * (1.0 + e * psi);
    }
    let k = (STIRLING_MIN - y).ceil() as usize;
    let (z, ez) = two_sum(y, k as f64);
    let mut prod = 1.0;
    let mut harmonic = 0.0;
    for j in 0..k {
        let f = y + j as f64;
        prod *= f;
        harmonic += 1.0 / f;
    }
    let psi = z.ln() - 0.5 / z;
    stirling(z) / prod * (1.0 + (e + ez) * psi - e * harmonic)
}

/// Euler's gamma function.
///
/// Positive integers up to 170 are returned as exact factorial products,
/// arguments below 1/2 go through the reflection formula.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Ok(f64::NAN);
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x.fract() == 0.0 && x <= 171.0 {
        let n = x as u32;
        return Ok((1..n).fold(1.0, |acc, k| acc * k as f64));
    }
    if x < 0.5 {
        let (y, e) = two_sum(1.0, -x);
        return Ok(PI / (sin_pi(x) * gamma_positive(y, e)));
    }
    Ok(gamma_positive(x, 0.0))
}

/// 1/Γ(x), which is entire: zero at the nonpositive integers.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    match gamma(x) {
        Ok(g) => 1.0 / g,
        Err(_) => 0.0,
    }
}

/// Rising factorial (a)_n = a(a+1)...(a+n-1), with (a)_0 = 1.
///
/// Computed as a product so that a nonpositive integer `a` yields an exact
/// zero once the factor `a + k = 0` is reached.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn gamma_known_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_eq!(gamma(6.0).unwrap(), 120.0);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-15);
        assert!(rel(gamma(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-14);
        assert!(rel(gamma(1.5).unwrap(), PI.sqrt() / 2.0) < 1e-15);
        assert!(rel(gamma(-1.5).unwrap(), 4.0 * PI.sqrt() / 3.0) < 1e-14);
        // Γ(1/3) from the standard tables
        assert!(rel(gamma(1.0 / 3.0).unwrap(), 2.678_938_534_707_747_6) < 1e-14);
        assert!(rel(gamma(10.3).unwrap(), 716_430.689_062_375_2) < 1e-13);
    }

    #[test]
    fn gamma_poles_are_errors() {
        for x in [0.0, -1.0, -7.0] {
            assert_eq!(gamma(x), Err(Error::Pole(x)));
            assert_eq!(rgamma(x), 0.0);
        }
    }

    #[test]
    fn reflection_identity() {
        let tol = 1e-14;
        let grid = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, -0.7, 1.3, 2.6];
        for z in grid {
            let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
            let rhs = PI / sin_pi(z);
            assert!(
                (lhs - rhs).abs() <= 10.0 * tol * PI / sin_pi(z).abs(),
                "z = {z}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn pochhammer_basics() {
        assert_eq!(pochhammer(3.7, 0), 1.0);
        assert_eq!(pochhammer(1.0, 5), 120.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
        assert_eq!(pochhammer(-2.0, 3), 0.0);
        assert_eq!(pochhammer(-2.0, 2), 2.0);
    }

    #[test]
    fn trig_pi_exact_points() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(cos_pi(0.5), 0.0);
        assert_eq!(cos_pi(2.5), 0.0);
        assert_eq!(sin_pi(0.5), 1.0);
        assert!((sin_pi(0.3) - (0.3 * PI).sin()).abs() < 1e-16);
        assert!((cos_pi(-1.7) - (-1.7 * PI).cos()).abs() < 1e-15);
    }
}
