//! Scalar special functions.

mod confluent;
mod continuation;
mod gamma;
mod params;
mod series;
pub(crate) mod wide;

#[cfg(test)]
pub(crate) use confluent::hermite_fractional_kummer;
pub use confluent::{hermite_fractional, kummer_u};
pub use gamma::{cos_pi, gamma, pochhammer, rgamma, sin_pi};
pub use params::PfqParams;
pub use series::{hyp1f1, hypergeometric, pfq, pfq_at};
