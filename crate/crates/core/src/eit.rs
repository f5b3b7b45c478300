//! The generalized Euler integral transform.
//!
//! A kernel `prefactor * ∫_0^1 t^{c-1} (1-t)^{d-c-1} AFB[a; b; z t^m] dt`
//! equals `prefactor * B(c, d-c) * A+mFB+m[a, c_j; b, d_j; z]` with
//! `c_j = (c+j)/m` and `d_j = (d+j)/m`, `j = 0..m-1`. The kernel's inner
//! parameters carry the argument map `z(x)`, which the transform keeps.

use crate::error::{Error, Result};
use crate::precision::{EvalResult, PrecisionConfig};
use crate::quadrature::gauss_jacobi;
use crate::specfun::{gamma, pfq, PfqParams};

/// Default tolerance for matching an upper against a lower parameter.
pub const CANCELLATION_EPS: f64 = 1e-12;

/// Beta-weighted hypergeometric integral. `inner` is evaluated at
/// `z(x) * t^m`, so its argument power must be compatible with `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerKernel {
    pub c: f64,
    pub d: f64,
    pub m: u32,
    pub prefactor: f64,
    pub inner: PfqParams,
    /// Evaluation point of the outer argument map.
    pub x: f64,
}

/// Exponents read off a rescaled Caputo integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelMatch {
    pub n: u32,
    pub alpha: f64,
    /// Power of `t` multiplying the hypergeometric factor.
    pub t_exponent: u32,
    /// Power of `t` inside the hypergeometric argument.
    pub arg_power: u32,
}

impl EulerKernel {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.d > self.c) {
            return Err(Error::domain(format!(
                "Euler kernel needs d > c > 0, got c={} d={}",
                self.c, self.d
            )));
        }
        if self.m == 0 {
            return Err(Error::domain("Euler kernel needs m >= 1"));
        }
        self.inner.validate()
    }

    /// Argument of the inner function at `t = 1`.
    pub fn z(&self) -> f64 {
        self.inner.argument(self.x)
    }
}

/// Solves the matching conditions `c - 1 = t_exponent`, `d - c = 1 - alpha`,
/// `m = arg_power`.
pub fn match_kernel(m: &KernelMatch) -> Result<(f64, f64, u32)> {
    if !(0.0..1.0).contains(&m.alpha) {
        return Err(Error::InvalidAlpha(m.alpha));
    }
    if m.arg_power == 0 {
        return Err(Error::domain("argument power must be positive"));
    }
    let c = f64::from(m.t_exponent) + 1.0;
    Ok((c, c + 1.0 - m.alpha, m.arg_power))
}

/// Rewrites the kernel as a single hypergeometric function with `m` extra
/// upper and lower parameters and the beta factor folded into the
/// coefficient.
pub fn eit_transform(kernel: &EulerKernel) -> Result<PfqParams> {
    kernel.validate()?;
    let mf = f64::from(kernel.m);
    let mut upper = kernel.inner.upper.clone();
    let mut lower = kernel.inner.lower.clone();
    for j in 0..kernel.m {
        let jf = f64::from(j);
        upper.push((kernel.c + jf) / mf);
        lower.push((kernel.d + jf) / mf);
    }
    let beta = gamma(kernel.d - kernel.c)? * gamma(kernel.c)? / gamma(kernel.d)?;
    Ok(PfqParams {
        upper,
        lower,
        coefficient: kernel.prefactor * beta * kernel.inner.coefficient,
        argument_scale: kernel.inner.argument_scale,
        argument_power: kernel.inner.argument_power,
    })
}

/// Removes upper/lower pairs closer than `eps`, each value at most once per
/// multiplicity. Order of the survivors is preserved.
pub fn simplify_params_eps(p: &PfqParams, eps: f64) -> PfqParams {
    let mut upper = p.upper.clone();
    let mut lower = Vec::with_capacity(p.lower.len());
    for &b in &p.lower {
        if let Some(pos) = upper.iter().position(|&a| (a - b).abs() <= eps) {
            upper.remove(pos);
        } else {
            lower.push(b);
        }
    }
    PfqParams {
        upper,
        lower,
        ..p.clone()
    }
}

pub fn simplify_params(p: &PfqParams) -> PfqParams {
    simplify_params_eps(p, CANCELLATION_EPS)
}

fn kernel_integral(kernel: &EulerKernel, nodes: usize, cfg: &PrecisionConfig) -> Result<f64> {
    let a = kernel.d - kernel.c - 1.0;
    let b = kernel.c - 1.0;
    let rule = gauss_jacobi(nodes, a, b)?;
    let z = kernel.z();
    let scale = 2f64.powf(-(a + b + 1.0));
    let mut acc = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let t = (1.0 + x) / 2.0;
        let arg = z * t.powi(kernel.m as i32);
        let inner = PfqParams {
            argument_scale: 1.0,
            argument_power: 1,
            ..kernel.inner.clone()
        };
        let v = pfq(&inner, arg, cfg).map_err(|e| {
            Error::QuadratureDivergence(format!("inner series failed at t={t}: {e}"))
        })?;
        acc += w * scale * v.value;
    }
    Ok(acc)
}

/// Evaluates the kernel integral directly by Gauss–Jacobi quadrature with
/// weight `t^{c-1} (1-t)^{d-c-1}`. The error estimate is the change under
/// one doubling of the node count.
pub fn eit_numeric_check(kernel: &EulerKernel, cfg: &PrecisionConfig) -> Result<EvalResult> {
    kernel.validate()?;
    cfg.validate()?;
    let n = cfg.quad_nodes;
    let coarse = kernel_integral(kernel, n, cfg)?;
    let fine = kernel_integral(kernel, 2 * n, cfg)?;
    let value = kernel.prefactor * fine;
    let err = (kernel.prefactor * (fine - coarse)).abs();
    Ok(EvalResult::checked(
        value,
        err,
        2 * n,
        cfg.rel_tol.max(1e-12),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn matching_examples() {
        let sin = KernelMatch {
            n: 1,
            alpha: 0.5,
            t_exponent: 0,
            arg_power: 2,
        };
        assert_eq!(match_kernel(&sin).unwrap(), (1.0, 1.5, 2));
        let cos = KernelMatch {
            n: 2,
            alpha: 0.25,
            t_exponent: 3,
            arg_power: 4,
        };
        assert_eq!(match_kernel(&cos).unwrap(), (4.0, 4.75, 4));
        let poly = KernelMatch {
            n: 1,
            alpha: 0.0,
            t_exponent: 0,
            arg_power: 1,
        };
        assert_eq!(match_kernel(&poly).unwrap(), (1.0, 2.0, 1));
        let bad = KernelMatch { alpha: 1.0, ..poly };
        assert_eq!(match_kernel(&bad), Err(Error::InvalidAlpha(1.0)));
    }

    fn shifted_poly_kernel(n: u32, alpha: f64) -> EulerKernel {
        EulerKernel {
            c: 1.0,
            d: 2.0 - alpha,
            m: 1,
            prefactor: 1.0,
            inner: PfqParams::new([1.0 - f64::from(n), 1.0], [1.0]).with_argument(-1.0, 1),
            x: 0.5,
        }
    }

    #[test]
    fn conventional_transform_appends_c_and_d() {
        let k = shifted_poly_kernel(3, 0.4);
        let p = eit_transform(&k).unwrap();
        assert_eq!(p.upper, vec![-2.0, 1.0, 1.0]);
        assert_eq!(p.lower, vec![1.0, 1.6]);
        let s = simplify_params(&p);
        assert_eq!(s.upper, vec![-2.0, 1.0]);
        assert_eq!(s.lower, vec![1.6]);
    }

    #[test]
    fn parameter_counts() {
        for m in 1..6 {
            let k = EulerKernel {
                c: 1.5,
                d: 2.2,
                m,
                prefactor: 1.0,
                inner: PfqParams::new([0.5, 1.0], [1.0]),
                x: 0.1,
            };
            let p = eit_transform(&k).unwrap();
            assert_eq!(p.order(), (2 + m as usize, 1 + m as usize));
        }
    }

    #[test]
    fn simplify_examples() {
        let p = PfqParams::new([0.5, 0.5, 1.0], [1.0, 1.25, 1.75]);
        let s = simplify_params(&p);
        assert_eq!(s.upper, vec![0.5, 0.5]);
        assert_eq!(s.lower, vec![1.25, 1.75]);
        let q = PfqParams::new([0.3], [0.7]);
        assert_eq!(simplify_params(&q), q);
        // multiplicity: one lower 1 cancels one upper 1
        let r = simplify_params(&PfqParams::new([1.0, 1.0], [1.0]));
        assert_eq!(r.upper, vec![1.0]);
        assert!(r.lower.is_empty());
    }

    #[test]
    fn zero_argument_is_beta_function() {
        let k = EulerKernel {
            c: 2.0,
            d: 2.7,
            m: 2,
            prefactor: 3.0,
            inner: PfqParams::new([], [0.5]).with_argument(0.0, 2),
            x: 1.0,
        };
        let q = eit_numeric_check(&k, &cfg()).unwrap();
        let b = gamma(2.0).unwrap() * gamma(0.7).unwrap() / gamma(2.7).unwrap();
        assert!(rel(q.value, 3.0 * b) < 1e-13);
    }

    #[test]
    fn sine_kernel_quadrature_matches_series() {
        // n = 1, alpha = 1/2, beta = 1, x = 1
        let alpha = 0.5;
        let x = 1.0f64;
        let k = EulerKernel {
            c: 1.0,
            d: 2.0 - alpha,
            m: 2,
            prefactor: x.powf(1.0 - alpha) / gamma(1.0 - alpha).unwrap(),
            inner: PfqParams::new([], [0.5]).with_argument(-0.25, 2),
            x,
        };
        let q = eit_numeric_check(&k, &cfg()).unwrap();
        let s = pfq(&simplify_params(&eit_transform(&k).unwrap()), x, &cfg()).unwrap();
        assert!(rel(q.value, s.value) < 1e-12, "{} vs {}", q.value, s.value);
    }

    #[test]
    fn cancellation_invariance() {
        let p = PfqParams::new([0.5, 1.0, 1.5], [1.0, 1.25, 1.75]).with_argument(-1.0, 2);
        for &x in &[0.3, 0.8, 2.0] {
            let a = pfq(&p, x, &cfg()).unwrap().value;
            let b = pfq(&simplify_params(&p), x, &cfg()).unwrap().value;
            assert!(rel(a, b) < 1e-13);
        }
    }
}
