use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while evaluating a derivative, a special
/// function or one of the quadrature oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    Pole(f64),

    #[error("lower parameter {0} is zero or a negative integer")]
    LowerParamPole(f64),

    #[error("series did not converge within {terms} terms")]
    NoConvergence { terms: usize },

    #[error("Tricomi U is only supported for non-integer b (got b = {0})")]
    IntegerB(f64),

    #[error("fractional order alpha = {0} is outside the supported range")]
    InvalidAlpha(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("the polynomial shift xi must be nonzero")]
    XiZero,

    #[error("quadrature failed: {0}")]
    QuadratureDivergence(String),

    #[error("oscillatory integrands have no convergent Liouville-Caputo quadrature")]
    OscillatoryRejected,

    #[error("cannot certify result: error estimate {estimate:e} exceeds budget {budget:e}")]
    PrecisionInsufficient { estimate: f64, budget: f64 },

    #[error("invalid precision configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown figure '{0}'")]
    UnknownFigure(String),

    #[error("no Liouville-Caputo comparison for {0}")]
    UnsupportedComparison(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the
    /// numerics. The CLI maps these to exit code 2 and the rest to 3.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Pole(_)
                | Error::LowerParamPole(_)
                | Error::IntegerB(_)
                | Error::InvalidAlpha(_)
                | Error::Domain(_)
                | Error::XiZero
                | Error::OscillatoryRejected
                | Error::InvalidConfig(_)
                | Error::UnknownFigure(_)
                | Error::UnsupportedComparison(_)
        )
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
