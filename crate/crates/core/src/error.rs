use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has zero constant term and no reciprocal")]
    NonUnit,

    #[error("{op} needs a series with zero constant term")]
    NonzeroConstant { op: &'static str },

    #[error("compositional inverse needs a delta series (zero constant term, nonzero linear term)")]
    NotDelta,

    #[error("{rv}: first-kind numbers need a nonzero mean, E[Y] != 0")]
    ZeroMean { rv: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not available: {0}")]
    NotAvailable(String),
}

impl Error {
    /// True for violations of a mathematical precondition of the input
    /// (as opposed to malformed input).
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::ZeroMean { .. })
    }
}
