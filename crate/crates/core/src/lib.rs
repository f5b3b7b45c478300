//! Closed-form Caputo fractional derivatives of elementary functions through
//! the generalized Euler integral transform, with quadrature oracles.

// Range checks are written `!(x >= 0.0)` on purpose so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod cli;
pub mod eit;
pub mod error;
pub mod figures;
pub mod oracle;
pub mod precision;
pub mod quadrature;
pub mod specfun;
pub mod validation;

pub use error::{Error, Result};
pub use precision::{EvalResult, PrecisionConfig};
