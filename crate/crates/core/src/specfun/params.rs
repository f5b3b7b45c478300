use crate::error::{Error, Result};

/// Parameter arrays and argument map of a generalized hypergeometric
/// expression `coefficient * AFB[upper; lower; argument_scale * x^argument_power]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PfqParams {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub coefficient: f64,
    pub argument_scale: f64,
    pub argument_power: u32,
}

impl PfqParams {
    /// Unit coefficient and identity argument map `z(x) = x`.
    pub fn new(upper: impl Into<Vec<f64>>, lower: impl Into<Vec<f64>>) -> Self {
        Self {
            upper: upper.into(),
            lower: lower.into(),
            coefficient: 1.0,
            argument_scale: 1.0,
            argument_power: 1,
        }
    }

    pub fn with_coefficient(mut self, coefficient: f64) -> Self {
        self.coefficient = coefficient;
        self
    }

    pub fn with_argument(mut self, scale: f64, power: u32) -> Self {
        self.argument_scale = scale;
        self.argument_power = power;
        self
    }

    /// The series argument z(x) = argument_scale * x^argument_power.
    pub fn argument(&self, x: f64) -> f64 {
        self.argument_scale * x.powi(self.argument_power as i32)
    }

    /// (A, B) in AFB.
    pub fn order(&self) -> (usize, usize) {
        (self.upper.len(), self.lower.len())
    }

    /// Checks the lower-parameter pole invariant and the argument map.
    pub fn validate(&self) -> Result<()> {
        for &b in &self.lower {
            if !b.is_finite() || (b <= 0.0 && b.fract() == 0.0) {
                return Err(Error::LowerParamPole(b));
            }
        }
        if self.upper.iter().any(|a| !a.is_finite()) {
            return Err(Error::domain("non-finite upper parameter"));
        }
        if self.argument_power == 0 {
            return Err(Error::domain("argument power must be a positive integer"));
        }
        Ok(())
    }
}
