use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A caller-side precondition (for example squarefreeness) does not hold.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("numerical failure: {message} (achieved residual {residual:e})")]
    NumericalFailure { message: String, residual: f64 },

    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    /// Consecutive loop samples are too far apart to continue a sign lift.
    #[error("ambiguous sign continuation at sample {index} (chordal step {step:.3}); refine first")]
    RefineFirst { index: usize, step: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>, residual: f64) -> Self {
        Error::NumericalFailure { message: msg.into(), residual }
    }

    /// Short machine-readable tag, used in JSON diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::ContractViolation(_) => "contract-violation",
            Error::NumericalFailure { .. } => "numerical-failure",
            Error::UnsupportedParameters(_) => "unsupported-parameters",
            Error::RefineFirst { .. } => "refine-first",
            Error::Parse(_) => "parse",
        }
    }
}
