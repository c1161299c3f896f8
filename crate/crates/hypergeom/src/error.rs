use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure classes of the
/// individual backends so callers can match on what actually went wrong.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter lies outside the supported family (j out of [1,11],
    /// unsupported orbit denominator, non-prime p, ...).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Text input did not match the datum grammar.
    #[error("parse error at token {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// The prime does not satisfy the congruence conditions required by
    /// the characters involved (denominator does not divide p-1, ...).
    #[error("incompatible prime: {0}")]
    IncompatiblePrime(String),

    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A certified bound was too large to round or to assert the claim;
    /// retry at a higher working precision.
    #[error("precision error: {0}")]
    Precision(String),

    /// Two routes that must agree did not.
    #[error("consistency failure: {0}")]
    Consistency(String),

    /// A partial term of a truncated p-adic sum had negative valuation.
    #[error("integrality error: {0}")]
    Integrality(String),

    /// A q-expansion was not long enough for the requested operation.
    #[error("truncation error: {0}")]
    Truncation(String),

    /// A fractional exponent cannot be represented on any integer grid.
    #[error("grid error: {0}")]
    Grid(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
