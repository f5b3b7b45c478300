//! Closed-form Caputo derivatives of the elementary-function catalog.
//!
//! Each family reads its Euler kernel off the rescaled Caputo integral
//! `x^{1-a} / G(1-a) ∫_0^1 (1-s)^{-a} f'(xs) ds`, runs it through the
//! transform, and evaluates the resulting series. The `G(1-a)` of the
//! Caputo prefactor and the `G(d-c) = G(1-a)` of the beta factor are
//! cancelled by hand, so the coefficient stays finite as `a -> 1`.
//! Orders 0 and 1 use the shifted function and the classical derivative.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::eit::{eit_transform, match_kernel, simplify_params, EulerKernel, KernelMatch};
use crate::error::{Error, Result};
use crate::precision::{EvalResult, PrecisionConfig};
use crate::specfun::{gamma, pfq, PfqParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    SinPow,
    CosPow,
    SinhPow,
    CoshPow,
    PlaneWave,
    ArcsinPow,
    ArccosPow,
    ArctanPow,
    ArccotPow,
    ExpPow,
    Lorentzian,
    ShiftedPoly,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 12] = [
        FunctionKind::SinPow,
        FunctionKind::CosPow,
        FunctionKind::SinhPow,
        FunctionKind::CoshPow,
        FunctionKind::PlaneWave,
        FunctionKind::ArcsinPow,
        FunctionKind::ArccosPow,
        FunctionKind::ArctanPow,
        FunctionKind::ArccotPow,
        FunctionKind::ExpPow,
        FunctionKind::Lorentzian,
        FunctionKind::ShiftedPoly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::SinPow => "sin",
            FunctionKind::CosPow => "cos",
            FunctionKind::SinhPow => "sinh",
            FunctionKind::CoshPow => "cosh",
            FunctionKind::PlaneWave => "planewave",
            FunctionKind::ArcsinPow => "arcsin",
            FunctionKind::ArccosPow => "arccos",
            FunctionKind::ArctanPow => "arctan",
            FunctionKind::ArccotPow => "arccot",
            FunctionKind::ExpPow => "exp",
            FunctionKind::Lorentzian => "lorentzian",
            FunctionKind::ShiftedPoly => "poly",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let lower = name.to_ascii_lowercase();
        let kind = match lower.as_str() {
            "gaussian" => FunctionKind::ExpPow,
            "shiftedpoly" | "shifted-poly" => FunctionKind::ShiftedPoly,
            "plane-wave" => FunctionKind::PlaneWave,
            _ => *Self::ALL.iter().find(|k| k.name() == lower)?,
        };
        Some(kind)
    }

    pub fn is_complex(self) -> bool {
        self == FunctionKind::PlaneWave
    }
}

/// One function family: `kind` applied to `(beta x)^n`. For the Lorentzian
/// `beta` is the width `gamma`; for the shifted polynomial `(x + xi)^n`
/// `beta` is unused.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogEntry {
    pub kind: FunctionKind,
    pub n: u32,
    pub beta: f64,
    pub xi: f64,
}

/// Order and evaluation point for one family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaputoRequest {
    pub entry: CatalogEntry,
    pub alpha: f64,
    pub x: f64,
}

impl CatalogEntry {
    pub fn new(kind: FunctionKind) -> Self {
        Self {
            kind,
            n: 1,
            beta: 1.0,
            xi: 1.0,
        }
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.n = n;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_xi(mut self, xi: f64) -> Self {
        self.xi = xi;
        self
    }

    pub fn request(self, alpha: f64, x: f64) -> CaputoRequest {
        CaputoRequest {
            entry: self,
            alpha,
            x,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::domain("power n must be at least 1"));
        }
        if self.kind == FunctionKind::Lorentzian && self.n != 1 {
            return Err(Error::domain("the Lorentzian has no power parameter"));
        }
        if self.kind == FunctionKind::ShiftedPoly {
            if self.xi == 0.0 {
                return Err(Error::XiZero);
            }
            if !self.xi.is_finite() {
                return Err(Error::domain("xi must be finite"));
            }
        } else if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::domain(format!(
                "scale must be positive, got {}",
                self.beta
            )));
        }
        Ok(())
    }

    fn u(&self, x: f64) -> f64 {
        (self.beta * x).powi(self.n as i32)
    }

    /// du/dx for u = (beta x)^n.
    fn du(&self, x: f64) -> f64 {
        f64::from(self.n) * self.beta * (self.beta * x).powi(self.n as i32 - 1)
    }

    fn check_point(&self, x: f64, strict_unit: bool) -> Result<()> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::domain(format!("x must be finite and >= 0, got {x}")));
        }
        if matches!(self.kind, FunctionKind::ArcsinPow | FunctionKind::ArccosPow) {
            let bx = self.beta * x;
            if bx > 1.0 || (strict_unit && bx >= 1.0) {
                return Err(Error::domain(format!(
                    "|beta x| = {bx} is outside the arcsin/arccos domain"
                )));
            }
        }
        Ok(())
    }

    /// f(x).
    pub fn value(&self, x: f64) -> Result<Complex64> {
        self.validate()?;
        self.check_point(x, false)?;
        let u = self.u(x);
        let re = |v: f64| Ok(Complex64::new(v, 0.0));
        match self.kind {
            FunctionKind::SinPow => re(u.sin()),
            FunctionKind::CosPow => re(u.cos()),
            FunctionKind::SinhPow => re(u.sinh()),
            FunctionKind::CoshPow => re(u.cosh()),
            FunctionKind::PlaneWave => Ok(Complex64::new(u.cos(), u.sin())),
            FunctionKind::ArcsinPow => re(u.asin()),
            FunctionKind::ArccosPow => re(u.acos()),
            FunctionKind::ArctanPow => re(u.atan()),
            FunctionKind::ArccotPow => re(FRAC_PI_2 - u.atan()),
            FunctionKind::ExpPow => re((-u).exp()),
            FunctionKind::Lorentzian => {
                let g = self.beta;
                re(g / 2.0 / PI / (x * x + g * g / 4.0))
            }
            FunctionKind::ShiftedPoly => re((x + self.xi).powi(self.n as i32)),
        }
    }

    /// f(x) - f(0), written to avoid cancellation near the origin.
    pub fn shifted_value(&self, x: f64) -> Result<Complex64> {
        self.validate()?;
        self.check_point(x, false)?;
        let u = self.u(x);
        let re = |v: f64| Ok(Complex64::new(v, 0.0));
        match self.kind {
            FunctionKind::SinPow => re(u.sin()),
            FunctionKind::CosPow => re(-2.0 * (u / 2.0).sin().powi(2)),
            FunctionKind::SinhPow => re(u.sinh()),
            FunctionKind::CoshPow => re(2.0 * (u / 2.0).sinh().powi(2)),
            FunctionKind::PlaneWave => Ok(Complex64::new(-2.0 * (u / 2.0).sin().powi(2), u.sin())),
            FunctionKind::ArcsinPow => re(u.asin()),
            FunctionKind::ArccosPow => re(-u.asin()),
            FunctionKind::ArctanPow => re(u.atan()),
            FunctionKind::ArccotPow => re(-u.atan()),
            FunctionKind::ExpPow => re((-u).exp_m1()),
            FunctionKind::Lorentzian => {
                let g = self.beta;
                re(-2.0 / (PI * g) * x * x / (x * x + g * g / 4.0))
            }
            FunctionKind::ShiftedPoly => {
                // sum_{k>=1} C(n,k) x^k xi^(n-k)
                let n = self.n as i32;
                let mut binom = 1.0;
                let mut acc = 0.0;
                for k in 1..=n {
                    binom *= f64::from(n - k + 1) / f64::from(k);
                    acc += binom * x.powi(k) * self.xi.powi(n - k);
                }
                re(acc)
            }
        }
    }

    /// f'(x).
    pub fn derivative(&self, x: f64) -> Result<Complex64> {
        self.validate()?;
        let strict = matches!(self.kind, FunctionKind::ArcsinPow | FunctionKind::ArccosPow);
        self.check_point(x, strict)?;
        Ok(self.derivative_unchecked(x))
    }

    /// f'(t) without domain checks, for quadrature nodes inside a checked
    /// interval. Valid for every real t of the family's domain.
    pub fn derivative_unchecked(&self, t: f64) -> Complex64 {
        let u = self.u(t);
        let du = self.du(t);
        let re = |v: f64| Complex64::new(v, 0.0);
        match self.kind {
            FunctionKind::SinPow => re(du * u.cos()),
            FunctionKind::CosPow => re(-du * u.sin()),
            FunctionKind::SinhPow => re(du * u.cosh()),
            FunctionKind::CoshPow => re(du * u.sinh()),
            FunctionKind::PlaneWave => Complex64::new(-u.sin(), u.cos()) * du,
            FunctionKind::ArcsinPow => re(du / ((1.0 - u) * (1.0 + u)).sqrt()),
            FunctionKind::ArccosPow => re(-du / ((1.0 - u) * (1.0 + u)).sqrt()),
            FunctionKind::ArctanPow => re(du / (1.0 + u * u)),
            FunctionKind::ArccotPow => re(-du / (1.0 + u * u)),
            FunctionKind::ExpPow => re(-du * (-u).exp()),
            FunctionKind::Lorentzian => {
                let g = self.beta;
                let q = t * t + g * g / 4.0;
                re(-(g / PI) * t / (q * q))
            }
            FunctionKind::ShiftedPoly => {
                re(f64::from(self.n) * (t + self.xi).powi(self.n as i32 - 1))
            }
        }
    }
}

impl CaputoRequest {
    pub fn validate(&self) -> Result<()> {
        self.entry.validate()?;
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        let strict = self.alpha > 0.0 && self.entry.kind != FunctionKind::PlaneWave;
        self.entry.check_point(self.x, strict)
    }
}

fn require_open_order(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

/// Euler kernel of the rescaled Caputo integral for a real family. The
/// kernel carries the full prefactor, `1/G(1-a)` included.
pub fn kernel_for(entry: &CatalogEntry, alpha: f64, x: f64) -> Result<EulerKernel> {
    entry.validate()?;
    require_open_order(alpha)?;
    let n = entry.n;
    let nf = f64::from(n);
    let b = entry.beta;
    let rg = 1.0 / gamma(1.0 - alpha)?;
    let (t_exponent, arg_power, prefactor, inner) = match entry.kind {
        FunctionKind::SinPow | FunctionKind::SinhPow => {
            let sign = if entry.kind == FunctionKind::SinPow {
                -1.0
            } else {
                1.0
            };
            let inner =
                PfqParams::new([], [0.5]).with_argument(sign * b.powi(2 * n as i32) / 4.0, 2 * n);
            (
                n - 1,
                2 * n,
                nf * b.powi(n as i32) * x.powf(nf - alpha) * rg,
                inner,
            )
        }
        FunctionKind::CosPow | FunctionKind::CoshPow => {
            let sign = if entry.kind == FunctionKind::CosPow {
                -1.0
            } else {
                1.0
            };
            let inner =
                PfqParams::new([], [1.5]).with_argument(sign * b.powi(2 * n as i32) / 4.0, 2 * n);
            // cos' = -du sin u, cosh' = du sinh u, and sin u = u 0F1[; 3/2; -u^2/4]
            let pre = sign * nf * b.powi(2 * n as i32) * x.powf(2.0 * nf - alpha) * rg;
            (2 * n - 1, 2 * n, pre, inner)
        }
        FunctionKind::ArcsinPow | FunctionKind::ArccosPow => {
            let sign = if entry.kind == FunctionKind::ArcsinPow {
                1.0
            } else {
                -1.0
            };
            let inner =
                PfqParams::new([0.5, 1.0], [1.0]).with_argument(b.powi(2 * n as i32), 2 * n);
            (
                n - 1,
                2 * n,
                sign * nf * b.powi(n as i32) * x.powf(nf - alpha) * rg,
                inner,
            )
        }
        FunctionKind::ArctanPow | FunctionKind::ArccotPow => {
            let sign = if entry.kind == FunctionKind::ArctanPow {
                1.0
            } else {
                -1.0
            };
            let inner =
                PfqParams::new([1.0, 1.0], [1.0]).with_argument(-b.powi(2 * n as i32), 2 * n);
            (
                n - 1,
                2 * n,
                sign * nf * b.powi(n as i32) * x.powf(nf - alpha) * rg,
                inner,
            )
        }
        FunctionKind::ExpPow => {
            let inner = PfqParams::new([1.0], [1.0]).with_argument(-b.powi(n as i32), n);
            (
                n - 1,
                n,
                -nf * b.powi(n as i32) * x.powf(nf - alpha) * rg,
                inner,
            )
        }
        FunctionKind::Lorentzian => {
            let g = b;
            let inner = PfqParams::new([2.0, 1.0], [1.0]).with_argument(-4.0 / (g * g), 2);
            (
                1,
                2,
                -16.0 * x.powf(2.0 - alpha) / (PI * g.powi(3)) * rg,
                inner,
            )
        }
        FunctionKind::ShiftedPoly => {
            let xi = entry.xi;
            let inner = PfqParams::new([1.0 - nf, 1.0], [1.0]).with_argument(-1.0 / xi, 1);
            (
                0,
                1,
                nf * xi.powi(n as i32 - 1) * x.powf(1.0 - alpha) * rg,
                inner,
            )
        }
        FunctionKind::PlaneWave => {
            return Err(Error::domain(
                "the plane wave splits into cosine and sine kernels",
            ))
        }
    };
    let (c, d, m) = match_kernel(&KernelMatch {
        n,
        alpha,
        t_exponent,
        arg_power,
    })?;
    Ok(EulerKernel {
        c,
        d,
        m,
        prefactor,
        inner,
        x,
    })
}

/// Coefficient of the transformed series with `G(1-a)` cancelled by hand:
/// the kernel prefactor times `G(1-a)`, times `G(c)/G(d)`.
fn analytic_coefficient(entry: &CatalogEntry, alpha: f64, x: f64, c: f64, d: f64) -> Result<f64> {
    let n = entry.n;
    let nf = f64::from(n);
    let b = entry.beta;
    let beta_ratio = gamma(c)? / gamma(d)?;
    let head = match entry.kind {
        FunctionKind::SinPow | FunctionKind::SinhPow => nf * b.powi(n as i32) * x.powf(nf - alpha),
        FunctionKind::CosPow => -nf * b.powi(2 * n as i32) * x.powf(2.0 * nf - alpha),
        FunctionKind::CoshPow => nf * b.powi(2 * n as i32) * x.powf(2.0 * nf - alpha),
        FunctionKind::ArcsinPow | FunctionKind::ArctanPow => {
            nf * b.powi(n as i32) * x.powf(nf - alpha)
        }
        FunctionKind::ArccosPow | FunctionKind::ArccotPow => {
            -nf * b.powi(n as i32) * x.powf(nf - alpha)
        }
        FunctionKind::ExpPow => -nf * b.powi(n as i32) * x.powf(nf - alpha),
        FunctionKind::Lorentzian => -16.0 * x.powf(2.0 - alpha) / (PI * b.powi(3)),
        FunctionKind::ShiftedPoly => nf * entry.xi.powi(n as i32 - 1) * x.powf(1.0 - alpha),
        FunctionKind::PlaneWave => unreachable!("plane wave has no single kernel"),
    };
    Ok(head * beta_ratio)
}

/// The transformed, simplified series whose value at `x` is the Caputo
/// derivative of order `alpha` in (0, 1).
pub fn closed_form_params(entry: &CatalogEntry, alpha: f64, x: f64) -> Result<PfqParams> {
    let kernel = kernel_for(entry, alpha, x)?;
    let mut params = simplify_params(&eit_transform(&kernel)?);
    params.coefficient = analytic_coefficient(entry, alpha, x, kernel.c, kernel.d)?;
    Ok(params)
}

fn real_family(
    entry: &CatalogEntry,
    alpha: f64,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<EvalResult> {
    require_open_order(alpha)?;
    if x == 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    let params = closed_form_params(entry, alpha, x)?;
    pfq(&params, x, cfg)
}

/// Sine, cosine and their hyperbolic counterparts of `(beta x)^n`, for
/// `0 < alpha < 1`.
pub fn caputo_trig(
    kind: FunctionKind,
    n: u32,
    beta: f64,
    alpha: f64,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<EvalResult> {
    if !matches!(
        kind,
        FunctionKind::SinPow | FunctionKind::CosPow | FunctionKind::SinhPow | FunctionKind::CoshPow
    ) {
        return Err(Error::domain(format!(
            "{} is not a trigonometric family",
            kind.name()
        )));
    }
    let e = CatalogEntry::new(kind).with_n(n).with_beta(beta);
    e.request(alpha, x).validate()?;
    real_family(&e, alpha, x, cfg)
}

/// `exp(i (beta x)^n)` as cosine plus i times sine, for `0 < alpha < 1`.
pub fn caputo_planewave(
    n: u32,
    beta: f64,
    alpha: f64,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<EvalResult<Complex64>> {
    let re = caputo_trig(FunctionKind::CosPow, n, beta, alpha, x, cfg)?;
    let im = caputo_trig(FunctionKind::SinPow, n, beta, alpha, x, cfg)?;
    Ok(EvalResult {
        value: Complex64::new(re.value, im.value),
        abs_error_estimate: re.abs_error_estimate.hypot(im.abs_error_estimate),
        terms_used: re.terms_used.max(im.terms_used),
        converged: re.converged && im.converged,
    })
}

/// Inverse trigonometric functions of `(beta x)^n`, for `0 < alpha < 1`.
pub fn caputo_inverse_trig(
    kind: FunctionKind,
    n: u32,
    beta: f64,
    alpha: f64,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<EvalResult> {
    if !matches!(
        kind,
        FunctionKind::ArcsinPow
            | FunctionKind::ArccosPow
            | FunctionKind::ArctanPow
            | FunctionKind::ArccotPow
    ) {
        return Err(Error::domain(format!(
            "{} is not an inverse trigonometric family",
            kind.name()
        )));
    }
    let e = CatalogEntry::new(kind).with_n(n).with_beta(beta);
    e.request(alpha, x).validate()?;
    real_family(&e, alpha, x, cfg)
}

/// `exp(-(beta x)^n)`, for `0 < alpha < 1`.
pub fn caputo_exp(
    n: u32,
    beta: f64,
    alpha: f64,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<EvalResult> {
    let e = CatalogEntry::new(FunctionKind::ExpPow)
        .with_n(n)
        .with_beta(beta);
    e.request(alpha, x).validate()?;
    real_family(&e, alpha, x, cfg)
}

/// The Lorentzian of full width `gamma`, for `0 < alpha < 1`.
pub fn caputo_lorentzian(
    gamma_width: f64,
    alpha: f64,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<EvalResult> {
    let e = CatalogEntry::new(FunctionKind::Lorentzian).with_beta(gamma_width);
    e.request(alpha, x).validate()?;
    real_family(&e, alpha, x, cfg)
}

/// `(x + xi)^n`, for `0 < alpha < 1`. The series terminates after `n` terms.
pub fn caputo_shifted_poly(
    n: u32,
    xi: f64,
    alpha: f64,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<EvalResult> {
    let e = CatalogEntry::new(FunctionKind::ShiftedPoly)
        .with_n(n)
        .with_xi(xi);
    e.request(alpha, x).validate()?;
    real_family(&e, alpha, x, cfg)
}

/// Caputo derivative of any family, complex-valued for the plane wave.
pub fn caputo_complex(req: &CaputoRequest, cfg: &PrecisionConfig) -> Result<EvalResult<Complex64>> {
    req.validate()?;
    cfg.validate()?;
    let CaputoRequest { entry, alpha, x } = *req;
    if alpha == 0.0 {
        // adding +0 turns the -0 of expm1(-0) and friends into +0
        return Ok(EvalResult::exact(
            entry.shifted_value(x)? + Complex64::new(0.0, 0.0),
        ));
    }
    if alpha == 1.0 {
        return Ok(EvalResult::exact(entry.derivative(x)?));
    }
    if entry.kind == FunctionKind::PlaneWave {
        return caputo_planewave(entry.n, entry.beta, alpha, x, cfg);
    }
    Ok(real_family(&entry, alpha, x, cfg)?.into_complex())
}

/// Caputo derivative of a real-valued family.
pub fn caputo(req: &CaputoRequest, cfg: &PrecisionConfig) -> Result<EvalResult> {
    if req.entry.kind.is_complex() {
        return Err(Error::domain(
            "the plane wave is complex-valued; use caputo_complex",
        ));
    }
    let r = caputo_complex(req, cfg)?;
    Ok(EvalResult {
        value: r.value.re,
        abs_error_estimate: r.abs_error_estimate,
        terms_used: r.terms_used,
        converged: r.converged,
    })
}
