use thiserror::Error;

/// Errors raised by rate, bound and sweep computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RelayError {
    /// An input violated a precondition (non-finite value, wrong length, violated power constraint).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative numerical method stopped before reaching its tolerance.
    #[error("convergence failure: {message} (best estimate {best})")]
    Convergence { message: String, best: f64 },

    /// Every candidate point of an optimization was infeasible.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// Malformed command-line or configuration input.
    #[error("usage: {0}")]
    Usage(String),

    #[error("io: {0}")]
    Io(String),

    /// A consistency check over computed results found violations.
    #[error("check failed: {0}")]
    Check(String),
}

impl RelayError {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        RelayError::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        RelayError::Domain(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            RelayError::Usage(_) | RelayError::Domain(_) => 2,
            RelayError::Infeasible(_) => 3,
            RelayError::Convergence { .. } => 4,
            RelayError::Io(_) | RelayError::Check(_) => 1,
        }
    }
}

impl From<std::io::Error> for RelayError {
    fn from(e: std::io::Error) -> Self {
        RelayError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, RelayError>;
