use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the inputs does not hold.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The computation would exceed a configured size budget.
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    /// A computed upper bound fell below the exact value it is meant to bound.
    #[error("soundness violation: {0}")]
    Soundness(String),

    #[error("quadrature did not converge: estimate {estimate}, error bound {error}")]
    Quadrature { estimate: f64, error: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn budget(what: &'static str, needed: impl TryInto<u128>, limit: impl TryInto<u128>) -> Self {
        Error::Budget {
            what,
            needed: needed.try_into().unwrap_or(u128::MAX),
            limit: limit.try_into().unwrap_or(u128::MAX),
        }
    }
}
