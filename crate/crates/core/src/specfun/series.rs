//! Generalized hypergeometric series.
//!
//! Terms follow the ratio recurrence
//! `t[k+1] = t[k] * prod(a_i + k) / prod(b_j + k) * z / (k + 1)`.
//! A plain `f64` pass is tried first. When its rounding estimate shows that
//! cancellation ate the requested accuracy (or the argument is large and
//! the series alternates) the sum is redone in extended precision, with the
//! digit count raised until the estimate fits.

use super::continuation;
use super::params::PfqParams;
use super::wide::{bits_for_digits, Scalar, Wide};
use crate::error::{Error, Result};
use crate::precision::{EvalResult, PrecisionConfig};

/// `p+1Fp` with z at or below this value is continued through the conformal
/// re-expansion instead of being summed directly.
pub(crate) const CONTINUATION_THRESHOLD: f64 = -0.75;

const MAX_DIGITS: u32 = 4000;
const MAX_ESCALATIONS: usize = 4;

/// Raw outcome of one summation pass.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: f64,
    /// Sum of term magnitudes, the yardstick for rounding error.
    pub abs_sum: f64,
    pub terms: usize,
    pub truncation: f64,
    pub rounding: f64,
    pub finished: bool,
}

impl SeriesSum {
    pub(crate) fn error(&self) -> f64 {
        self.truncation + self.rounding
    }
}

/// Drops (upper, lower) pairs that are bitwise equal. The value of the
/// series is unchanged by construction.
pub(crate) fn cancel_exact(upper: &[f64], lower: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut up = upper.to_vec();
    let mut low = Vec::with_capacity(lower.len());
    for &b in lower {
        if let Some(pos) = up.iter().position(|&a| a == b) {
            up.remove(pos);
        } else {
            low.push(b);
        }
    }
    (up, low)
}

/// Degree of the polynomial when some upper parameter is a nonpositive
/// integer.
pub(crate) fn terminating_degree(upper: &[f64]) -> Option<usize> {
    upper
        .iter()
        .filter(|a| **a <= 0.0 && a.fract() == 0.0)
        .map(|a| (-a) as usize)
        .min()
}

/// Sums the series directly in the scalar type `T`.
pub(crate) fn sum_direct<T: Scalar>(
    upper: &[f64],
    lower: &[f64],
    z: f64,
    rel_tol: f64,
    max_terms: usize,
    ctx: T::Ctx,
) -> SeriesSum {
    let degree = terminating_degree(upper);
    let zt = T::lift(z, ctx);
    let ratio_limit = if upper.len() == lower.len() + 1 {
        z.abs()
    } else {
        0.0
    };
    let u = T::unit_roundoff(ctx);

    let mut term = T::lift(1.0, ctx);
    let mut sum = T::lift(1.0, ctx);
    let mut term_mag = 1.0f64;
    let mut abs_sum = 1.0f64;
    let mut small_run = 0usize;
    let mut truncation = f64::INFINITY;
    let mut finished = false;
    let mut terminated = false;
    let mut k = 0usize;

    while k < max_terms {
        let mut num = zt.clone();
        for &a in upper {
            num = num.mul(&T::shifted(a, k, ctx));
        }
        let mut den = T::lift((k + 1) as f64, ctx);
        for &b in lower {
            den = den.mul(&T::shifted(b, k, ctx));
        }
        let next = term.mul(&num).div(&den);
        k += 1;

        if next.is_exact_zero() && degree.is_some() {
            truncation = 0.0;
            finished = true;
            terminated = true;
            break;
        }
        sum = sum.add(&next);
        let next_mag = next.approx().abs();
        if !next_mag.is_finite() {
            break;
        }
        let ratio = if term_mag > 0.0 {
            next_mag / term_mag
        } else {
            0.0
        };
        abs_sum += next_mag;
        term = next;
        term_mag = next_mag;

        let scale = sum.approx().abs().max(u * abs_sum);
        if term_mag <= rel_tol * 0.1 * scale {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 3 && ratio < 1.0 {
            let rho = ratio.max(ratio_limit);
            if rho < 1.0 {
                let tail = term_mag * rho / (1.0 - rho);
                if tail <= rel_tol * 0.1 * scale {
                    truncation = tail;
                    finished = true;
                    break;
                }
            }
        }
    }

    let value = sum.approx();
    let rounding = u * abs_sum * (4.0 + (k as f64).sqrt());
    SeriesSum {
        value,
        abs_sum,
        terms: if terminated { k } else { k + 1 },
        truncation,
        rounding,
        finished: finished && value.is_finite(),
    }
}

/// log10 of the largest term magnitude, computed without overflow.
fn log10_max_term(upper: &[f64], lower: &[f64], z: f64, max_terms: usize) -> f64 {
    let mut log_t = 0.0f64;
    let mut best = 0.0f64;
    let lz = z.abs().ln();
    for k in 0..max_terms {
        let kf = k as f64;
        let mut step = lz - (kf + 1.0).ln();
        for &a in upper {
            step += (a + kf).abs().ln();
        }
        for &b in lower {
            step -= (b + kf).abs().ln();
        }
        if !step.is_finite() {
            break;
        }
        log_t += step;
        best = best.max(log_t);
        if step < 0.0 && log_t < best - 100.0 {
            break;
        }
    }
    best / std::f64::consts::LN_10
}

fn relative_target(rel_tol: f64, value: f64) -> f64 {
    rel_tol * value.abs().max(1e-300)
}

/// Extended-precision summation, escalating digits until the rounding
/// estimate meets the relative target or the cap is reached.
fn sum_extended(
    upper: &[f64],
    lower: &[f64],
    z: f64,
    cfg: &PrecisionConfig,
    mut digits: u32,
) -> SeriesSum {
    let mut last = None;
    for _ in 0..MAX_ESCALATIONS {
        let bits = bits_for_digits(digits);
        let s = sum_direct::<Wide>(upper, lower, z, cfg.rel_tol, cfg.max_terms, bits);
        let target = relative_target(cfg.rel_tol, s.value);
        if !s.finished || s.rounding <= target || digits >= MAX_DIGITS {
            return s;
        }
        let short = (s.rounding / target).log10().ceil().max(1.0) as u32;
        digits = (digits + short + 8).min(MAX_DIGITS);
        last = Some(s);
    }
    last.expect("at least one extended pass")
}

fn digits_needed(abs_sum: f64, value: f64, rel_tol: f64) -> u32 {
    let loss = (abs_sum / value.abs().max(1e-300)).log10().max(0.0);
    let want = -rel_tol.log10();
    (loss + want + 6.0).ceil().max(34.0) as u32
}

/// The hypergeometric function AFB[upper; lower; z] itself (no coefficient).
pub fn hypergeometric(
    upper: &[f64],
    lower: &[f64],
    z: f64,
    cfg: &PrecisionConfig,
) -> Result<EvalResult> {
    cfg.validate()?;
    for &b in lower {
        if !b.is_finite() || (b <= 0.0 && b.fract() == 0.0) {
            return Err(Error::LowerParamPole(b));
        }
    }
    if !z.is_finite() {
        return Err(Error::domain(format!("series argument {z} is not finite")));
    }
    if z == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    let (up, low) = cancel_exact(upper, lower);
    let degree = terminating_degree(&up);

    match (up.len(), low.len()) {
        (0, 0) => {
            return Ok(EvalResult::checked(
                z.exp(),
                z.exp() * f64::EPSILON,
                0,
                cfg.rel_tol,
            ))
        }
        (1, 0) if degree.is_none() || z < 1.0 => {
            // binomial series (1 - z)^(-a)
            if z >= 1.0 && degree.is_none() {
                return Err(Error::domain(format!(
                    "1F0 argument {z} lies on the branch cut"
                )));
            }
            let v = (1.0 - z).powf(-up[0]);
            return Ok(EvalResult::checked(
                v,
                4.0 * f64::EPSILON * v.abs(),
                0,
                cfg.rel_tol,
            ));
        }
        _ => {}
    }

    if degree.is_none() {
        let (a, b) = (up.len(), low.len());
        if a > b + 1 {
            return Err(Error::NoConvergence { terms: 0 });
        }
        if a == b + 1 {
            if z >= 1.0 {
                return Err(Error::domain(format!(
                    "{a}F{b} argument {z} is outside the region of convergence"
                )));
            }
            if z <= CONTINUATION_THRESHOLD {
                return continuation::continued(&up, &low, z, cfg);
            }
        }
    }

    let alternating = z < 0.0;
    let forced = cfg.wants_extended() || (alternating && z.abs() > cfg.cancellation_threshold);

    let sum = if forced {
        let base = cfg.working_digits.max(34);
        let hint = log10_max_term(&up, &low, z, cfg.max_terms).ceil() as u32;
        sum_extended(&up, &low, z, cfg, base.max(hint + 20))
    } else {
        let s = sum_direct::<f64>(&up, &low, z, cfg.rel_tol, cfg.max_terms, ());
        if s.finished && s.rounding <= relative_target(cfg.rel_tol, s.value) {
            s
        } else if s.finished {
            let digits = digits_needed(s.abs_sum, s.value, cfg.rel_tol);
            sum_extended(&up, &low, z, cfg, digits)
        } else if s.terms >= cfg.max_terms {
            return Err(Error::NoConvergence {
                terms: cfg.max_terms,
            });
        } else {
            // overflowed in f64
            let hint = log10_max_term(&up, &low, z, cfg.max_terms).ceil() as u32;
            sum_extended(&up, &low, z, cfg, (hint + 30).max(34))
        }
    };

    if !sum.finished {
        return Err(Error::NoConvergence { terms: sum.terms });
    }
    Ok(EvalResult::checked(
        sum.value,
        sum.error(),
        sum.terms,
        cfg.rel_tol,
    ))
}

/// `coefficient * AFB[upper; lower; z]` evaluated at a given argument value.
pub fn pfq_at(params: &PfqParams, z: f64, cfg: &PrecisionConfig) -> Result<EvalResult> {
    params.validate()?;
    let f = hypergeometric(&params.upper, &params.lower, z, cfg)?;
    Ok(f.scaled(params.coefficient, cfg.rel_tol))
}

/// `coefficient * AFB[upper; lower; argument_scale * x^argument_power]`.
pub fn pfq(params: &PfqParams, x: f64, cfg: &PrecisionConfig) -> Result<EvalResult> {
    pfq_at(params, params.argument(x), cfg)
}

/// Confluent hypergeometric function 1F1(a; b; z).
pub fn hyp1f1(a: f64, b: f64, z: f64, cfg: &PrecisionConfig) -> Result<EvalResult> {
    hypergeometric(&[a], &[b], z, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn exponential() {
        let p = PfqParams::new([1.0], [1.0]);
        let r = pfq(&p, -0.7, &cfg()).unwrap();
        assert!(rel(r.value, 0.496_585_303_791_409_5) < 1e-15);
        assert!(r.converged);
    }

    #[test]
    fn sine_and_cosine() {
        for i in 0..40 {
            let x = 0.2 * i as f64;
            let s = pfq(
                &PfqParams::new([], [1.5]).with_argument(-0.25, 2),
                x,
                &cfg(),
            )
            .unwrap();
            assert!(rel(x * s.value, x.sin()) < 1e-14, "sin {x}");
            let c = pfq(
                &PfqParams::new([], [0.5]).with_argument(-0.25, 2),
                x,
                &cfg(),
            )
            .unwrap();
            assert!(rel(c.value, x.cos()) < 1e-14, "cos {x}");
        }
        // coefficient carries the x of x 0F1[; 3/2; -x^2/4]
        let s = pfq(
            &PfqParams::new([], [1.5])
                .with_coefficient(2.0)
                .with_argument(-0.25, 2),
            2.0,
            &cfg(),
        )
        .unwrap();
        assert!(rel(s.value, 0.909_297_426_825_681_7) < 1e-14);
    }

    #[test]
    fn binomial_cases() {
        let r = hypergeometric(&[2.0, 1.0], &[1.0], -0.25, &cfg()).unwrap();
        assert!(rel(r.value, 0.64) < 1e-15);
        for &k in &[-2.0f64, -0.5] {
            for &xi in &[0.1, 0.5, 0.9, 3.0, 40.0] {
                let r = hypergeometric(&[-k, 1.0], &[1.0], -xi, &cfg()).unwrap();
                let expect = (1.0 + xi).powf(k);
                assert!(
                    rel(r.value, expect) < 1e-14,
                    "k={k} xi={xi}: {} vs {expect}",
                    r.value
                );
            }
        }
    }

    #[test]
    fn zero_argument_returns_coefficient() {
        let p = PfqParams::new([0.3, 2.0], [1.7]).with_coefficient(-3.5);
        assert_eq!(pfq(&p, 0.0, &cfg()).unwrap().value, -3.5);
    }

    #[test]
    fn terminating_polynomial() {
        // 2F1[-3, b; c; z] is a cubic
        let (b, c, z) = (0.7, 1.3, -12.0);
        let mut expect = 0.0;
        let mut t = 1.0;
        for k in 0..4 {
            expect += t;
            let kf = k as f64;
            t *= (-3.0 + kf) * (b + kf) / (c + kf) * z / (kf + 1.0);
        }
        let r = hypergeometric(&[-3.0, b], &[c], z, &cfg()).unwrap();
        assert!(rel(r.value, expect) < 1e-14);
        assert_eq!(r.terms_used, 4);
    }

    #[test]
    fn lower_pole_rejected() {
        assert_eq!(
            hypergeometric(&[1.0], &[-2.0], 0.5, &cfg()),
            Err(Error::LowerParamPole(-2.0))
        );
        let p = PfqParams::new([1.0], [0.0]);
        assert!(matches!(
            pfq(&p, 1.0, &cfg()),
            Err(Error::LowerParamPole(_))
        ));
    }

    #[test]
    fn divergent_orders_rejected() {
        assert!(matches!(
            hypergeometric(&[1.0, 2.0, 3.0], &[1.5], 0.1, &cfg()),
            Err(Error::NoConvergence { .. })
        ));
        assert!(hypergeometric(&[0.5, 1.0], &[1.5], 1.5, &cfg())
            .unwrap_err()
            .is_domain());
    }

    #[test]
    fn max_terms_cap() {
        let c = cfg().with_max_terms(5);
        assert!(matches!(
            hypergeometric(&[1.0], &[1.5], 3.0, &c),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn cancellation_guard_large_argument() {
        // alternating 1F1 at -50 against its positive-term Kummer image
        let r = hyp1f1(0.3, 1.7, -50.0, &cfg()).unwrap();
        let k = (-50f64).exp() * hyp1f1(1.4, 1.7, 50.0, &cfg()).unwrap().value;
        assert!((r.value - k).abs() <= 1e-14 * k.abs(), "{} vs {k}", r.value);
        assert!(r.converged);
        let x = 30.0f64;
        let s = hypergeometric(&[], &[1.5], -x * x / 4.0, &cfg()).unwrap();
        assert!(
            ((x * s.value) - x.sin()).abs() < 1e-14,
            "{} vs {}",
            x * s.value,
            x.sin()
        );
        assert!(s.converged);
    }

    #[test]
    fn extended_digits_requested() {
        let c = PrecisionConfig::extended();
        let r = hypergeometric(&[0.25], &[0.5], -2.0, &c).unwrap();
        let d = hypergeometric(&[0.25], &[0.5], -2.0, &cfg()).unwrap();
        assert!(rel(r.value, d.value) < 1e-14);
    }

    #[test]
    fn kummer_transformation() {
        for &a in &[0.3, 1.7, -0.4] {
            for &b in &[0.5, 1.5, 2.2] {
                for &z in &[-3.0, -0.5, 0.8, 4.0] {
                    let l = hyp1f1(a, b, z, &cfg()).unwrap().value;
                    let r = z.exp() * hyp1f1(b - a, b, -z, &cfg()).unwrap().value;
                    assert!(rel(l, r) < 1e-13, "a={a} b={b} z={z}: {l} vs {r}");
                }
            }
        }
    }

    #[test]
    fn continuation_meets_direct_series() {
        // both sides of the switchover must agree
        let (up, low) = ([0.5, 1.0, 1.5], [1.25, 1.75]);
        let z0 = CONTINUATION_THRESHOLD;
        let direct = sum_direct::<f64>(&up, &low, z0, 1e-16, 100_000, ());
        let cont = continuation::continued(&up, &low, z0, &cfg()).unwrap();
        assert!(rel(direct.value, cont.value) < 1e-14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cancelling_pairs_do_not_change_value(
            a in 0.1f64..3.0, b in 0.1f64..3.0, shared in 0.2f64..4.0, z in -20.0f64..0.9
        ) {
            let plain = hypergeometric(&[a], &[b], z, &cfg()).unwrap().value;
            let padded = hypergeometric(&[a, shared], &[b, shared], z, &cfg()).unwrap().value;
            prop_assert!(rel(plain, padded) < 1e-14);
        }

        #[test]
        fn logarithm_series(z in -100.0f64..0.9) {
            // 2F1[1, 1; 2; z] = -ln(1 - z) / z
            prop_assume!(z.abs() > 1e-6);
            let r = hypergeometric(&[1.0, 1.0], &[2.0], z, &cfg()).unwrap();
            let expect = -(-z).ln_1p() / z;
            prop_assert!(rel(r.value, expect) < 1e-13, "{} vs {}", r.value, expect);
        }

        #[test]
        fn arctan_series_everywhere(x in 0.01f64..8.0) {
            let r = hypergeometric(&[0.5, 1.0], &[1.5], -x * x, &cfg()).unwrap();
            let expect = x.atan() / x;
            prop_assert!(rel(r.value, expect) < 1e-13, "{} vs {}", r.value, expect);
        }
    }
}
