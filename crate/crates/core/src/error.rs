use thiserror::Error;

/// Errors raised by the arithmetic, correction-term and obstruction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: expected a positive even integer")]
    InvalidModulus(i64),

    #[error("invalid divisor {0}: expected a positive integer")]
    InvalidDivisor(i64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("pole: evaluation at u = 0 with negative exponent {0}")]
    Pole(i64),

    #[error("root-of-unity evaluation requested for k = {k}, above the cap {cap}")]
    Cap { k: i64, cap: i64 },

    #[error("numerical consistency failure: {0}")]
    Numerical(String),

    #[error("outside the hypothesis of the formula: {0}")]
    OutOfHypothesis(String),

    #[error("negative signature {0}: reverse the orientation of the ambient manifold")]
    Orientation(i64),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
