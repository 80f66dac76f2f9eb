use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A scalar parameter is outside the range the method supports.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A point lies outside the domain of a mapping or exact solution.
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("length mismatch: expected {expected}, got {actual} ({context})")]
    LengthMismatch {
        expected: usize,
        actual: usize,
        context: &'static str,
    },

    #[error("empty input to {0}")]
    EmptyInput(&'static str),

    /// Grid sizes whose index arithmetic would overflow.
    #[error("index overflow: {0}")]
    IndexOverflow(String),

    #[error("series for {what} did not converge at z = {z}")]
    NonConvergence { what: &'static str, z: f64 },

    /// Non-finite value found in the evolving state.
    #[error("blow-up at t = {time}: first non-finite sample at index {index}")]
    BlowUp { time: f64, index: usize },

    /// A snapshot sink failed to record output.
    #[error("snapshot sink: {0}")]
    Sink(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
