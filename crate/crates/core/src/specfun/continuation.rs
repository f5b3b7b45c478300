//! Continuation of `p+1Fp` to large negative arguments.
//!
//! The cut plane `C \ [1, inf)` is mapped onto the unit disk by
//! `z = 4w / (1 + w)^2`, `w = (1 - sqrt(1 - z)) / (1 + sqrt(1 - z))`, and
//! the series is re-expanded in `w`. For `z < 0` the new variable satisfies
//! `-1 < w < 0`, so the re-expanded series converges wherever the function
//! is analytic. With `q = -w` the coefficient of `q^N` is
//!
//! `g_N = sum_{k=0..N} c_k (-4)^k C(N+k-1, 2k-1)`
//!
//! where `c_k` are the ordinary series coefficients. The inner sum cancels
//! heavily (terms grow like `(3 + 2 sqrt 2)^N`), so it is carried out in
//! extended precision sized from the number of terms.

use super::wide::{Scalar, Wide};
use crate::error::{Error, Result};
use crate::precision::{EvalResult, PrecisionConfig};

/// log2(3 + 2 sqrt 2): growth rate of the intermediate terms per order.
const GROWTH_BITS: f64 = 2.543_106_606_327_1;
const MAX_ORDER: usize = 6000;

/// `p+1Fp[upper; lower; z]` for `z < 0` by conformal re-expansion.
pub(crate) fn continued(
    upper: &[f64],
    lower: &[f64],
    z: f64,
    cfg: &PrecisionConfig,
) -> Result<EvalResult> {
    debug_assert!(z < 0.0 && upper.len() == lower.len() + 1);
    let s = (1.0 - z).sqrt();
    let q = (s - 1.0) / (s + 1.0);
    // q in (0, 1); log-growth of q^N against the target
    let target = cfg.rel_tol * 1e-2;
    let mut order = ((target.ln() / q.ln()) * 1.25).ceil() as usize + 40;
    order = order.min(MAX_ORDER);

    for _ in 0..3 {
        match sum_reexpanded(upper, lower, q, order, cfg) {
            Some(r) => return Ok(r),
            None if order >= MAX_ORDER => break,
            None => order = (order * 2).min(MAX_ORDER),
        }
    }
    Err(Error::NoConvergence { terms: order })
}

fn sum_reexpanded(
    upper: &[f64],
    lower: &[f64],
    q: f64,
    order: usize,
    cfg: &PrecisionConfig,
) -> Option<EvalResult> {
    let digits_bits = (-cfg.rel_tol.log2()).ceil() as usize;
    let bits = (GROWTH_BITS * order as f64).ceil() as usize
        + digits_bits.max(crate::specfun::wide::bits_for_digits(cfg.working_digits))
        + 64;
    let one = Wide::lift(1.0, bits);
    let qw = Wide::lift(q, bits);
    let minus4 = Wide::lift(-4.0, bits);

    // a_k = c_k (-4)^k, built incrementally as N grows
    let mut a: Vec<Wide> = vec![one.clone()];
    // e_k = C(N+k-1, 2k-1) and f_k = C(N+k-1, 2k-2) for the current N, kept
    // as exact integers (below 2^(2N) < 2^bits) and advanced by Pascal's
    // rule. Index 0 is padding.
    let mut e: Vec<Wide> = vec![Wide::lift(0.0, bits)];
    let mut f: Vec<Wide> = vec![Wide::lift(0.0, bits)];

    let mut sum = one.clone();
    let mut qpow = one.clone();
    let mut small_run = 0usize;
    let mut prev_mag = f64::INFINITY;
    let log2_q = q.log2();
    let mut rounding = 0.0f64;

    for n in 1..=order {
        let k_new = n;
        // extend a with c_n (-4)^n
        let km1 = k_new - 1;
        let mut ratio = minus4.clone();
        for &u in upper {
            ratio = ratio.mul(&Wide::shifted(u, km1, bits));
        }
        let mut den = Wide::lift(k_new as f64, bits);
        for &l in lower {
            den = den.mul(&Wide::shifted(l, km1, bits));
        }
        let next = a[km1].mul(&ratio).div(&den);
        a.push(next);

        // row N from row N-1: e_k += f_k, then f_k += e_{k-1} (already new)
        for k in 1..n {
            e[k] = e[k].add(&f[k]);
            if k > 1 {
                f[k] = f[k].add(&e[k - 1]);
            }
        }
        e.push(one.clone());
        f.push(Wide::lift((2 * n - 1) as f64, bits));

        let mut g = Wide::lift(0.0, bits);
        let mut peak = i32::MIN;
        for k in 1..=n {
            let t = a[k].mul(&e[k]);
            if let Some(x) = t.exponent() {
                peak = peak.max(x);
            }
            g = g.add(&t);
        }
        if peak > i32::MIN {
            // rounding of the inner sum, carried through q^n
            let log2_err = f64::from(peak) - bits as f64 + log2_q * n as f64;
            rounding += 2f64.powf(log2_err) * n as f64;
        }
        qpow = qpow.mul(&qw);
        let term = g.mul(&qpow);
        sum = sum.add(&term);

        let mag = term.approx().abs();
        let scale = sum.approx().abs();
        if mag <= cfg.rel_tol * 0.1 * scale && mag <= prev_mag {
            small_run += 1;
        } else {
            small_run = 0;
        }
        prev_mag = mag;
        if small_run >= 3 {
            let value = sum.approx();
            let truncation = 2.0 * mag * q / (1.0 - q);
            let rounding = rounding + 4.0 * f64::EPSILON * value.abs();
            return Some(EvalResult::checked(
                value,
                truncation.max(0.0) + rounding,
                n + 1,
                cfg.rel_tol,
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_continuation() {
        // 1F0 dressed as 2F1[a, 1; 1; z] = (1 - z)^-a
        let cfg = PrecisionConfig::default();
        for &(a, z) in &[(2.0, -5.0), (0.5, -64.0), (1.5, -0.8), (1.0, -1000.0)] {
            let r = continued(&[a, 1.0], &[1.0], z, &cfg).unwrap();
            let exact = (1.0f64 - z).powf(-a);
            assert!(
                (r.value - exact).abs() <= 1e-14 * exact.abs(),
                "{a} {z}: {} vs {exact}",
                r.value
            );
            assert!(r.converged, "{a} {z}: {r:?}");
        }
    }

    #[test]
    fn arctan_continuation() {
        // atan(x)/x = 2F1[1/2, 1; 3/2; -x^2]
        let cfg = PrecisionConfig::default();
        for &x in &[0.9f64, 2.0, 6.0, 30.0] {
            let r = continued(&[0.5, 1.0], &[1.5], -x * x, &cfg).unwrap();
            let exact = x.atan() / x;
            assert!(
                (r.value - exact).abs() <= 1e-14 * exact,
                "{x}: {} vs {exact}",
                r.value
            );
        }
    }
}
