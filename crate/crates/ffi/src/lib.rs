//! C ABI over the `caputo` engine.
//!
//! Every entry point returns a [`CaputoStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and
//! read back with [`caputo_last_error`]. Panics never cross the boundary.
//! Configuration lives behind an opaque [`CaputoConfig`] handle; a null
//! handle means the default configuration.

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use caputo::catalog::{caputo_complex, CatalogEntry, FunctionKind};
use caputo::oracle::{caputo_quadrature, lc_gaussian_hermite, DecayClass, Integrand};
use caputo::specfun::{gamma, hermite_fractional, pfq_at, PfqParams};
use caputo::{Error, EvalResult, PrecisionConfig};

/// Result code of every call. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaputoStatus {
    Ok = 0,
    NullPointer = 1,
    /// Input outside the supported domain, including invalid orders and
    /// configuration values.
    Domain = 2,
    /// Series or quadrature did not reach the tolerance.
    NoConvergence = 3,
    /// A gamma or lower-parameter pole was hit.
    Pole = 4,
    /// A result could not be certified at the configured precision.
    Precision = 5,
    /// An internal panic was caught.
    Panic = 6,
}

/// Function families, mirroring the engine's catalog.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaputoFunction {
    SinPow = 0,
    CosPow = 1,
    SinhPow = 2,
    CoshPow = 3,
    PlaneWave = 4,
    ArcsinPow = 5,
    ArccosPow = 6,
    ArctanPow = 7,
    ArccotPow = 8,
    ExpPow = 9,
    Lorentzian = 10,
    ShiftedPoly = 11,
}

impl From<CaputoFunction> for FunctionKind {
    fn from(f: CaputoFunction) -> Self {
        match f {
            CaputoFunction::SinPow => FunctionKind::SinPow,
            CaputoFunction::CosPow => FunctionKind::CosPow,
            CaputoFunction::SinhPow => FunctionKind::SinhPow,
            CaputoFunction::CoshPow => FunctionKind::CoshPow,
            CaputoFunction::PlaneWave => FunctionKind::PlaneWave,
            CaputoFunction::ArcsinPow => FunctionKind::ArcsinPow,
            CaputoFunction::ArccosPow => FunctionKind::ArccosPow,
            CaputoFunction::ArctanPow => FunctionKind::ArctanPow,
            CaputoFunction::ArccotPow => FunctionKind::ArccotPow,
            CaputoFunction::ExpPow => FunctionKind::ExpPow,
            CaputoFunction::Lorentzian => FunctionKind::Lorentzian,
            CaputoFunction::ShiftedPoly => FunctionKind::ShiftedPoly,
        }
    }
}

/// A value with its error estimate. `value_im` is zero for real families.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CaputoResult {
    pub value: f64,
    pub value_im: f64,
    pub abs_error: f64,
    pub terms_used: usize,
    pub converged: bool,
}

/// Opaque precision configuration.
pub struct CaputoConfig(PrecisionConfig);

/// `f'(t)` supplied by the caller, with an opaque context pointer.
pub type CaputoDerivativeFn = Option<extern "C" fn(t: f64, user_data: *mut c_void) -> f64>;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> CaputoStatus {
    match err {
        Error::Pole(_) | Error::LowerParamPole(_) => CaputoStatus::Pole,
        Error::NoConvergence { .. } | Error::QuadratureDivergence(_) => CaputoStatus::NoConvergence,
        Error::PrecisionInsufficient { .. } => CaputoStatus::Precision,
        e if e.is_domain() => CaputoStatus::Domain,
        _ => CaputoStatus::NoConvergence,
    }
}

/// Runs `f` behind the panic guard and records any failure.
fn guarded(f: impl FnOnce() -> Result<(), (CaputoStatus, String)>) -> CaputoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CaputoStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {msg}"));
            CaputoStatus::Panic
        }
    }
}

fn engine(e: Error) -> (CaputoStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (CaputoStatus, String) {
    (CaputoStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `cfg` is null or a live handle from [`caputo_config_new`].
unsafe fn config_of(cfg: *const CaputoConfig) -> PrecisionConfig {
    cfg.as_ref().map_or_else(PrecisionConfig::default, |c| c.0)
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write<T>(out: *mut T, v: T) -> Result<(), (CaputoStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

fn real_result(r: EvalResult) -> CaputoResult {
    CaputoResult {
        value: r.value,
        value_im: 0.0,
        abs_error: r.abs_error_estimate,
        terms_used: r.terms_used,
        converged: r.converged,
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn caputo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn caputo_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version contains NUL"),
        };
    VERSION.as_ptr()
}

/// New configuration with default tolerances. Free with
/// [`caputo_config_free`].
#[no_mangle]
pub extern "C" fn caputo_config_new() -> *mut CaputoConfig {
    Box::into_raw(Box::new(CaputoConfig(PrecisionConfig::default())))
}

/// # Safety
/// `cfg` is null or a handle from [`caputo_config_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn caputo_config_free(cfg: *mut CaputoConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

fn update(
    cfg: *mut CaputoConfig,
    f: impl FnOnce(PrecisionConfig) -> PrecisionConfig,
) -> CaputoStatus {
    guarded(|| {
        // SAFETY: caller passes a live handle or null, checked here
        let c = unsafe { cfg.as_mut() }.ok_or_else(|| null("config"))?;
        let next = f(c.0);
        next.validate().map_err(engine)?;
        c.0 = next;
        Ok(())
    })
}

/// Relative tolerance of series and quadrature. Rejected values leave the
/// handle unchanged.
///
/// # Safety
/// `cfg` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn caputo_config_set_rel_tol(
    cfg: *mut CaputoConfig,
    rel_tol: f64,
) -> CaputoStatus {
    update(cfg, |c| c.with_rel_tol(rel_tol))
}

/// Working precision in decimal digits; above 16 selects extended precision.
///
/// # Safety
/// `cfg` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn caputo_config_set_working_digits(
    cfg: *mut CaputoConfig,
    digits: u32,
) -> CaputoStatus {
    update(cfg, |c| c.with_working_digits(digits))
}

/// Cap on series terms.
///
/// # Safety
/// `cfg` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn caputo_config_set_max_terms(
    cfg: *mut CaputoConfig,
    max_terms: usize,
) -> CaputoStatus {
    update(cfg, |c| c.with_max_terms(max_terms))
}

/// Gauss rule size of the quadrature oracles.
///
/// # Safety
/// `cfg` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn caputo_config_set_quad_nodes(
    cfg: *mut CaputoConfig,
    nodes: usize,
) -> CaputoStatus {
    update(cfg, |c| c.with_quad_nodes(nodes))
}

/// Caputo derivative of order `alpha` in [0, 1] of a catalog family at
/// `x >= 0`. `beta` is the scale (the width for the Lorentzian) and `xi`
/// the shift of the polynomial.
///
/// # Safety
/// `cfg` is null or a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn caputo_eval(
    cfg: *const CaputoConfig,
    function: CaputoFunction,
    n: u32,
    beta: f64,
    xi: f64,
    alpha: f64,
    x: f64,
    out: *mut CaputoResult,
) -> CaputoStatus {
    guarded(|| {
        let cfg = config_of(cfg);
        let entry = CatalogEntry::new(function.into())
            .with_n(n)
            .with_beta(beta)
            .with_xi(xi);
        let r = caputo_complex(&entry.request(alpha, x), &cfg).map_err(engine)?;
        write(
            out,
            CaputoResult {
                value: r.value.re,
                value_im: r.value.im,
                abs_error: r.abs_error_estimate,
                terms_used: r.terms_used,
                converged: r.converged,
            },
        )
    })
}

/// `pFq[upper; lower; z]`. Either array may be null when its length is 0.
///
/// # Safety
/// `upper`/`lower` point to `n_upper`/`n_lower` readable doubles; `out` is
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn caputo_pfq(
    cfg: *const CaputoConfig,
    upper: *const f64,
    n_upper: usize,
    lower: *const f64,
    n_lower: usize,
    z: f64,
    out: *mut CaputoResult,
) -> CaputoStatus {
    guarded(|| {
        let slice = |p: *const f64, n: usize, what: &str| {
            if n == 0 {
                Ok(Vec::new())
            } else if p.is_null() {
                Err(null(what))
            } else {
                // SAFETY: caller guarantees n readable elements
                Ok(unsafe { std::slice::from_raw_parts(p, n) }.to_vec())
            }
        };
        let params = PfqParams::new(
            slice(upper, n_upper, "upper")?,
            slice(lower, n_lower, "lower")?,
        );
        let r = pfq_at(&params, z, &config_of(cfg)).map_err(engine)?;
        write(out, real_result(r))
    })
}

/// Gamma function.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn caputo_gamma(x: f64, out: *mut f64) -> CaputoStatus {
    guarded(|| write(out, gamma(x).map_err(engine)?))
}

/// Hermite function of real order `alpha` in [0, 1].
///
/// # Safety
/// `cfg` is null or a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn caputo_hermite(
    cfg: *const CaputoConfig,
    alpha: f64,
    x: f64,
    out: *mut f64,
) -> CaputoStatus {
    guarded(|| {
        write(
            out,
            hermite_fractional(alpha, x, &config_of(cfg)).map_err(engine)?,
        )
    })
}

/// Liouville–Caputo derivative of `exp(-beta x^2)`.
///
/// # Safety
/// `cfg` is null or a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn caputo_lc_gaussian(
    cfg: *const CaputoConfig,
    alpha: f64,
    beta: f64,
    x: f64,
    out: *mut f64,
) -> CaputoStatus {
    guarded(|| {
        write(
            out,
            lc_gaussian_hermite(alpha, beta, x, &config_of(cfg)).map_err(engine)?,
        )
    })
}

/// Caputo derivative of order `alpha` in (0, 1) at `x > 0` by quadrature of
/// a caller-supplied `f'`, evaluated only on `[0, x]`.
///
/// # Safety
/// `cfg` is null or a live handle; `fprime` must be safe to call with
/// `user_data` from this thread; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn caputo_quadrature_eval(
    cfg: *const CaputoConfig,
    fprime: CaputoDerivativeFn,
    user_data: *mut c_void,
    alpha: f64,
    x: f64,
    out: *mut CaputoResult,
) -> CaputoStatus {
    guarded(|| {
        let f = fprime.ok_or_else(|| null("derivative callback"))?;
        let integrand = Integrand::new(move |t: f64| f(t, user_data), DecayClass::Compact01);
        let r: EvalResult =
            caputo_quadrature(&integrand, alpha, x, &config_of(cfg)).map_err(engine)?;
        write(out, real_result(r))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_contains_panics() {
        let s = guarded(|| panic!("boom"));
        assert_eq!(s, CaputoStatus::Panic);
        let msg = unsafe { CStr::from_ptr(caputo_last_error()) }
            .to_str()
            .unwrap();
        assert_eq!(msg, "internal panic: boom");
    }

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::XiZero), CaputoStatus::Domain);
        assert_eq!(status_of(&Error::Pole(0.0)), CaputoStatus::Pole);
        assert_eq!(
            status_of(&Error::NoConvergence { terms: 1 }),
            CaputoStatus::NoConvergence
        );
        assert_eq!(
            status_of(&Error::PrecisionInsufficient {
                estimate: 1.0,
                budget: 0.0
            }),
            CaputoStatus::Precision
        );
    }
}
