//! Precision controls shared by every evaluator, and the result record they
//! return.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Per-call numerical settings. There is no global precision state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionConfig {
    /// Relative tolerance for series truncation and convergence checks.
    pub rel_tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
    /// Decimal digits used for series summation. 16 means plain `f64`
    /// unless cancellation forces a wider pass; anything larger always sums
    /// in extended precision with at least this many digits.
    pub working_digits: u32,
    /// Gauss rule size for the quadrature routines.
    pub quad_nodes: usize,
    /// |z| above which an alternating series is always re-summed in
    /// extended precision.
    pub cancellation_threshold: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            max_terms: 10_000,
            working_digits: 16,
            quad_nodes: 64,
            cancellation_threshold: 30.0,
        }
    }
}

impl PrecisionConfig {
    /// The configuration used for the large-argument regime.
    pub fn extended() -> Self {
        Self {
            working_digits: 34,
            ..Self::default()
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_working_digits(mut self, digits: u32) -> Self {
        self.working_digits = digits;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_quad_nodes(mut self, nodes: usize) -> Self {
        self.quad_nodes = nodes;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_terms == 0 {
            return Err(Error::InvalidConfig("max_terms must be at least 1".into()));
        }
        if self.working_digits < 16 {
            return Err(Error::InvalidConfig(format!(
                "working_digits must be at least 16, got {}",
                self.working_digits
            )));
        }
        if self.quad_nodes < 2 {
            return Err(Error::InvalidConfig("quad_nodes must be at least 2".into()));
        }
        if !(self.cancellation_threshold > 0.0) {
            return Err(Error::InvalidConfig(
                "cancellation_threshold must be positive".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn wants_extended(&self) -> bool {
        self.working_digits > 16
    }
}

/// Magnitude used by [`EvalResult`] bookkeeping, so the same record works for
/// real and complex values.
pub trait Magnitude: Copy {
    fn magnitude(&self) -> f64;
}

impl Magnitude for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Magnitude for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// A numeric value with an error estimate, the number of series terms that
/// produced it and whether the tolerance was met.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T = f64> {
    pub value: T,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl<T: Magnitude> EvalResult<T> {
    /// Builds a result and derives `converged` from the tolerance rule
    /// `abs_error <= rel_tol * max(1, |value|)`.
    pub fn checked(value: T, abs_error_estimate: f64, terms_used: usize, rel_tol: f64) -> Self {
        let converged = abs_error_estimate.is_finite()
            && abs_error_estimate <= rel_tol * value.magnitude().max(1.0);
        Self {
            value,
            abs_error_estimate,
            terms_used,
            converged,
        }
    }

    /// A value known to machine precision (closed forms, exact zeros).
    pub fn exact(value: T) -> Self {
        Self {
            value,
            abs_error_estimate: 0.0,
            terms_used: 0,
            converged: true,
        }
    }
}

impl EvalResult<f64> {
    /// Multiplies by an exactly-known prefactor, rescaling the error.
    pub fn scaled(self, factor: f64, rel_tol: f64) -> Self {
        let value = self.value * factor;
        let err = self.abs_error_estimate * factor.abs() + value.abs() * 4.0 * f64::EPSILON;
        let mut out = Self::checked(value, err, self.terms_used, rel_tol);
        out.converged &= self.converged;
        out
    }

    pub fn into_complex(self) -> EvalResult<Complex64> {
        EvalResult {
            value: Complex64::new(self.value, 0.0),
            abs_error_estimate: self.abs_error_estimate,
            terms_used: self.terms_used,
            converged: self.converged,
        }
    }
}
