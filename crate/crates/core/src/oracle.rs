//! Independent numerical evaluators used to witness the closed forms.
//!
//! Nothing here goes through the Euler transform: the Caputo integral is
//! integrated directly, the Liouville–Caputo integral is integrated over a
//! truncated half line, and the Fourier-side results are elementary or
//! confluent closed forms.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::catalog::{caputo_trig, FunctionKind};
use crate::error::{Error, Result};
use crate::precision::{EvalResult, Magnitude, PrecisionConfig};
use crate::quadrature::{integrate_beta01, integrate_legendre};
use crate::specfun::{cos_pi, gamma, hermite_fractional, hyp1f1, rgamma, sin_pi};

/// Geometric panels toward the singular endpoint: `[0, 1/2], [1/2, 3/4], ...`
/// with the last panel `[1 - 2^-K, 1]` carrying the Jacobi weight.
const GRADED_LEVELS: i32 = 12;

/// Tail cut for the half-line integral: the Gaussian envelope is below
/// `e^-LC_TAIL_LOG` at the truncation point.
const LC_TAIL_LOG: f64 = 44.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    /// Only evaluated on a bounded interval.
    Compact01,
    /// `|f'(t)|` falls off like `exp(-rate t^2)` as `t -> -inf`.
    ExpDecay { rate: f64 },
    /// Bounded but not decaying; refused on the half line.
    Oscillatory,
}

/// The first derivative `f'` of the function being differentiated.
#[derive(Debug, Clone, Copy)]
pub struct Integrand<F> {
    pub eval: F,
    pub decay_class: DecayClass,
}

impl<F> Integrand<F> {
    pub fn new(eval: F, decay_class: DecayClass) -> Self {
        Self { eval, decay_class }
    }
}

fn graded_integral<T, F>(n: usize, alpha: f64, g: &F) -> Result<T>
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    // (1-s)^-a is smooth on every panel but the last.
    let mut acc = T::default();
    let mut lo = 0.0;
    for k in 1..=GRADED_LEVELS {
        let hi = 1.0 - 0.5f64.powi(k);
        acc = acc + integrate_legendre(n, lo, hi, |s| Ok(g(s) * (1.0 - s).powf(-alpha)))?;
        lo = hi;
    }
    let h = 1.0 - lo;
    let tail: T = integrate_beta01(n, -alpha, 0.0, |v| Ok(g(lo + h * v)))?;
    Ok(acc + tail * h.powf(1.0 - alpha))
}

fn finite<T: Magnitude>(v: T, what: &str) -> Result<T> {
    if v.magnitude().is_finite() {
        Ok(v)
    } else {
        Err(Error::QuadratureDivergence(format!(
            "{what} produced a non-finite value"
        )))
    }
}

/// Caputo derivative straight from its integral definition,
/// `x^{1-a}/G(1-a) ∫_0^1 (1-s)^{-a} f'(xs) ds`, on graded panels with the
/// singular weight absorbed by a Gauss–Jacobi rule on the last panel. The
/// error estimate is the change under node doubling.
pub fn caputo_quadrature<T, F>(
    fprime: &Integrand<F>,
    alpha: f64,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<EvalResult<T>>
where
    T: Copy
        + Default
        + Add<Output = T>
        + Mul<f64, Output = T>
        + std::ops::Sub<Output = T>
        + Magnitude,
    F: Fn(f64) -> T,
{
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "caputo_quadrature needs x > 0, got {x}"
        )));
    }
    cfg.validate()?;
    let g = |s: f64| (fprime.eval)(x * s);
    let scale = x.powf(1.0 - alpha) * rgamma(1.0 - alpha);
    let n = cfg.quad_nodes;
    let coarse: T = graded_integral(n, alpha, &g)?;
    let fine: T = graded_integral(2 * n, alpha, &g)?;
    let value = finite(fine * scale, "caputo_quadrature")?;
    let err = (fine - coarse).magnitude() * scale.abs() + value.magnitude() * 8.0 * f64::EPSILON;
    Ok(EvalResult::checked(
        value,
        err,
        2 * n,
        cfg.rel_tol.max(1e-12),
    ))
}

/// Liouville–Caputo derivative `1/G(1-a) ∫_0^inf u^{-a} f'(x-u) du`,
/// split at `u = 1`: a Gauss–Jacobi rule with weight `u^{-a}` on `[0, 1]`,
/// then unit Gauss–Legendre panels out to a truncation point where the
/// Gaussian envelope is negligible. Only `ExpDecay` integrands qualify.
/// Order 1 returns `f'(x)`, the limit of the integral.
pub fn lc_quadrature<F>(
    fprime: &Integrand<F>,
    alpha: f64,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<EvalResult>
where
    F: Fn(f64) -> f64,
{
    let rate = match fprime.decay_class {
        DecayClass::ExpDecay { rate } if rate > 0.0 && rate.is_finite() => rate,
        DecayClass::ExpDecay { rate } => {
            return Err(Error::domain(format!(
                "decay rate must be positive, got {rate}"
            )))
        }
        _ => return Err(Error::OscillatoryRejected),
    };
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if !x.is_finite() {
        return Err(Error::domain("lc_quadrature needs finite x"));
    }
    cfg.validate()?;
    if alpha == 1.0 {
        return Ok(EvalResult::exact(finite(
            (fprime.eval)(x),
            "lc_quadrature",
        )?));
    }
    // exp(-rate (U - x)^2) <= e^-LC_TAIL_LOG, with x <= 0 treated as 0.
    let upper = 1.0f64.max(x.max(0.0) + (LC_TAIL_LOG / rate).sqrt());
    let panels = (upper - 1.0).ceil() as usize;
    let run = |n: usize| -> Result<f64> {
        let head: f64 = integrate_beta01(n, 0.0, -alpha, |t| Ok((fprime.eval)(x - t)))?;
        // integrate_beta01 maps [0, 1] with t^q, no extra scale needed.
        let mut acc = head;
        for k in 0..panels {
            let lo = 1.0 + k as f64;
            let hi = (lo + 1.0).min(upper);
            acc += integrate_legendre(n, lo, hi, |u| Ok((fprime.eval)(x - u) * u.powf(-alpha)))?;
        }
        Ok(acc * rgamma(1.0 - alpha))
    };
    let n = cfg.quad_nodes;
    let coarse = run(n)?;
    let fine = finite(run(2 * n)?, "lc_quadrature")?;
    let err = (fine - coarse).abs() + fine.abs() * 8.0 * f64::EPSILON;
    Ok(EvalResult::checked(
        fine,
        err,
        2 * n,
        cfg.rel_tol.max(1e-12),
    ))
}

/// Fourier-side derivatives of the harmonics: a gain of `beta^a` and a
/// phase advance of `pi a / 2`. Returns the sine and plane-wave values.
pub fn lc_harmonic(alpha: f64, beta: f64, t: f64) -> (f64, Complex64) {
    let gain = beta.powf(alpha);
    let phase = beta * t + FRAC_PI_2 * alpha;
    (gain * phase.sin(), Complex64::from_polar(gain, phase))
}

fn check_gaussian(alpha: f64, beta: f64, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    if !x.is_finite() {
        return Err(Error::domain("x must be finite"));
    }
    Ok(())
}

/// Liouville–Caputo derivative of `exp(-beta x^2)` in the two-Kummer form.
/// `a G(a/2)` is rewritten as `2 G(1+a/2)`, which is regular at `a = 0`.
pub fn lc_gaussian_kummer(alpha: f64, beta: f64, x: f64, cfg: &PrecisionConfig) -> Result<f64> {
    check_gaussian(alpha, beta, x)?;
    let z = -x * x * beta;
    let c = cos_pi(alpha / 2.0);
    let s = sin_pi(alpha / 2.0);
    let even = if c == 0.0 {
        0.0
    } else {
        c * gamma((alpha + 1.0) / 2.0)? * hyp1f1((alpha + 1.0) / 2.0, 0.5, z, cfg)?.value
    };
    let odd = if s == 0.0 || x == 0.0 {
        0.0
    } else {
        x * beta.sqrt()
            * s
            * 2.0
            * gamma(1.0 + alpha / 2.0)?
            * hyp1f1(alpha / 2.0 + 1.0, 1.5, z, cfg)?.value
    };
    Ok(2f64.powf(alpha) * beta.powf(alpha / 2.0) / PI.sqrt() * (even - odd))
}

/// Liouville–Caputo derivative of `exp(-beta x^2)` as a single Hermite
/// function of fractional index.
pub fn lc_gaussian_hermite(alpha: f64, beta: f64, x: f64, cfg: &PrecisionConfig) -> Result<f64> {
    check_gaussian(alpha, beta, x)?;
    let h = hermite_fractional(alpha, -beta.sqrt() * x, cfg)?;
    Ok(beta.powf(alpha / 2.0) * (-beta * x * x).exp() * h)
}

/// Difference between the Caputo and Liouville–Caputo derivatives of
/// `sin(beta t)` and the same difference scaled by its predicted leading
/// behaviour `t^{-a} / (beta t G(-a))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticResidual {
    pub residual: f64,
    pub scaled: f64,
    pub abs_error_estimate: f64,
}

/// Residual certification: the closed-form error must be this small a
/// fraction of the residual.
pub const RESIDUAL_CERTIFICATION: f64 = 1e-3;

pub fn asymptotic_residual(
    alpha: f64,
    beta: f64,
    t: f64,
    cfg: &PrecisionConfig,
) -> Result<AsymptoticResidual> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if !(beta > 0.0 && beta.is_finite()) || !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(
            "asymptotic_residual needs beta > 0 and t > 0",
        ));
    }
    let caputo = caputo_trig(FunctionKind::SinPow, 1, beta, alpha, t, cfg)?;
    let (lc, _) = lc_harmonic(alpha, beta, t);
    let residual = caputo.value - lc;
    // The harmonic is rounded once; the closed form carries its own estimate.
    let abs_error_estimate =
        caputo.abs_error_estimate + 4.0 * f64::EPSILON * lc.abs().max(caputo.value.abs());
    let budget = RESIDUAL_CERTIFICATION * residual.abs();
    if !caputo.converged || !(abs_error_estimate <= budget) {
        return Err(Error::PrecisionInsufficient {
            estimate: abs_error_estimate,
            budget,
        });
    }
    let scaled = residual * gamma(-alpha)? * beta * t.powf(1.0 + alpha);
    Ok(AsymptoticResidual {
        residual,
        scaled,
        abs_error_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{hermite_fractional_kummer, kummer_u};

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    fn gaussian_prime(beta: f64) -> Integrand<impl Fn(f64) -> f64> {
        Integrand::new(
            move |t: f64| -2.0 * beta * t * (-beta * t * t).exp(),
            DecayClass::ExpDecay { rate: beta },
        )
    }

    #[test]
    fn zero_integrand() {
        let f = Integrand::new(|_: f64| 0.0, DecayClass::Compact01);
        assert_eq!(caputo_quadrature(&f, 0.5, 1.0, &cfg()).unwrap().value, 0.0);
        let g = Integrand::new(|_: f64| 0.0, DecayClass::ExpDecay { rate: 1.0 });
        assert_eq!(lc_quadrature(&g, 0.5, 1.0, &cfg()).unwrap().value, 0.0);
    }

    #[test]
    fn power_rule() {
        let expect = 2.0 / PI.sqrt();
        let f = Integrand::new(|_: f64| 1.0, DecayClass::Compact01);
        assert!(close(
            caputo_quadrature(&f, 0.5, 1.0, &cfg()).unwrap().value,
            expect,
            1e-15
        ));
        for k in 1..=3 {
            for &a in &[0.25, 0.5, 0.75] {
                let f = Integrand::new(
                    move |t: f64| f64::from(k) * t.powi(k - 1),
                    DecayClass::Compact01,
                );
                let x = 1.7;
                let v = caputo_quadrature(&f, a, x, &cfg()).unwrap();
                let kf = f64::from(k);
                let expect =
                    gamma(kf + 1.0).unwrap() / gamma(kf + 1.0 - a).unwrap() * x.powf(kf - a);
                assert!(close(v.value, expect, 1e-13), "k={k} a={a}");
                assert!(v.converged);
            }
        }
    }

    #[test]
    fn complex_integrand() {
        let f = Integrand::new(
            |t: f64| Complex64::new(0.0, 2.0) * Complex64::new(0.0, 2.0 * t).exp(),
            DecayClass::Oscillatory,
        );
        let v: EvalResult<Complex64> = caputo_quadrature(&f, 0.5, 0.6, &cfg()).unwrap();
        let c = Integrand::new(|t: f64| -2.0 * (2.0 * t).sin(), DecayClass::Oscillatory);
        let s = Integrand::new(|t: f64| 2.0 * (2.0 * t).cos(), DecayClass::Oscillatory);
        let re = caputo_quadrature(&c, 0.5, 0.6, &cfg()).unwrap().value;
        let im = caputo_quadrature(&s, 0.5, 0.6, &cfg()).unwrap().value;
        assert!((v.value - Complex64::new(re, im)).norm() < 1e-15);
    }

    #[test]
    fn caputo_quadrature_rejects_orders() {
        let f = Integrand::new(|_: f64| 1.0, DecayClass::Compact01);
        assert_eq!(
            caputo_quadrature::<f64, _>(&f, 1.0, 1.0, &cfg()).unwrap_err(),
            Error::InvalidAlpha(1.0)
        );
        assert_eq!(
            caputo_quadrature::<f64, _>(&f, 0.0, 1.0, &cfg()).unwrap_err(),
            Error::InvalidAlpha(0.0)
        );
    }

    #[test]
    fn lc_rejects_oscillatory() {
        let f = Integrand::new(|t: f64| t.cos(), DecayClass::Oscillatory);
        assert_eq!(
            lc_quadrature(&f, 0.5, 1.0, &cfg()).unwrap_err(),
            Error::OscillatoryRejected
        );
    }

    #[test]
    fn lc_order_zero_recovers_function() {
        for &x in &[-1.5, 0.0, 0.3, 2.0] {
            let v = lc_quadrature(&gaussian_prime(1.0), 1e-9, x, &cfg())
                .unwrap()
                .value;
            assert!(close(v, (-x * x).exp(), 1e-6), "x={x}");
        }
    }

    #[test]
    fn lc_gaussian_routes_agree() {
        let v = lc_quadrature(&gaussian_prime(1.0), 0.5, 1.0, &cfg())
            .unwrap()
            .value;
        let h = lc_gaussian_hermite(0.5, 1.0, 1.0, &cfg()).unwrap();
        let k = lc_gaussian_kummer(0.5, 1.0, 1.0, &cfg()).unwrap();
        assert!(close(v, h, 1e-10) && close(h, k, 1e-12));
        let h = lc_gaussian_hermite(0.3, 2.0, 0.7, &cfg()).unwrap();
        let k = lc_gaussian_kummer(0.3, 2.0, 0.7, &cfg()).unwrap();
        assert!(close(h, k, 1e-12));
    }

    #[test]
    fn lc_gaussian_endpoints() {
        for &x in &[-1.0f64, 0.0, 0.5, 2.0] {
            let g = (-x * x).exp();
            assert!(close(
                lc_gaussian_kummer(0.0, 1.0, x, &cfg()).unwrap(),
                g,
                1e-15
            ));
            assert!(close(
                lc_gaussian_hermite(0.0, 1.0, x, &cfg()).unwrap(),
                g,
                1e-15
            ));
            let d = -2.0 * x * g;
            assert!(close(
                lc_gaussian_hermite(1.0, 1.0, x, &cfg()).unwrap(),
                d,
                1e-14
            ));
            assert!(close(
                lc_gaussian_kummer(1.0, 1.0, x, &cfg()).unwrap(),
                d,
                1e-14
            ));
        }
    }

    #[test]
    fn hermite_chain() {
        for &a in &[0.2, 0.5, 0.9] {
            for &x in &[0.3, 1.0, 1.8] {
                let h = hermite_fractional(a, x, &cfg()).unwrap();
                let u = 2f64.powf(a) * kummer_u(-a / 2.0, 0.5, x * x, &cfg()).unwrap();
                assert!(close(h, u, 1e-10), "a={a} x={x}");
                let xm = -x;
                assert!(close(
                    hermite_fractional(a, xm, &cfg()).unwrap(),
                    hermite_fractional_kummer(a, xm, &cfg()).unwrap(),
                    1e-10
                ));
            }
        }
    }

    #[test]
    fn harmonic_examples() {
        let (s, w) = lc_harmonic(0.0, 2.0, 0.4);
        assert_eq!(s, 0.8f64.sin());
        assert!((w - Complex64::new(0.0, 0.8).exp()).norm() < 1e-16);
        let (s, _) = lc_harmonic(1.0, 2.0, 0.4);
        assert!(close(s, 2.0 * 0.8f64.cos(), 1e-15));
        assert!(close(lc_harmonic(0.5, 1.0, 0.0).0, 0.5f64.sqrt(), 1e-15));
    }

    #[test]
    fn asymptotic_scaled_residual_near_one() {
        let r = asymptotic_residual(0.5, 1.0, 40.0, &PrecisionConfig::extended()).unwrap();
        assert!((r.scaled - 1.0).abs() < 0.1, "{}", r.scaled);
        let r20 = asymptotic_residual(0.3, 1.0, 20.0, &PrecisionConfig::extended()).unwrap();
        let r40 = asymptotic_residual(0.3, 1.0, 40.0, &PrecisionConfig::extended()).unwrap();
        let ratio = r20.residual / r40.residual;
        let expect = 2f64.powf(1.3);
        assert!((ratio / expect - 1.0).abs() < 0.15, "{ratio} vs {expect}");
    }
}
