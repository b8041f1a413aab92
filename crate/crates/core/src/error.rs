use thiserror::Error;

/// Errors raised by the exact-arithmetic operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input is well-formed but lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Textual input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// The distribution parameters violate the pmf constraints.
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    /// No remainder repeated within the step budget; the digits found so far are attached.
    #[error("no period detected within {steps} steps; use an enclosure instead")]
    PeriodNotDetected { steps: usize, prefix: Vec<u32> },

    /// Two inputs that must differ are equal.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn parse(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}
