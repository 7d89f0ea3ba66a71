//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by exact algebra, numerics, and the harness.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation
    /// (zero polynomial, reducible where irreducible is required, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured size bound was exceeded (degree caps, search budgets,
    /// unsupported extension shapes).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A numeric routine failed to converge to the requested accuracy.
    /// Carries the best value reached so callers can degrade gracefully.
    #[error("numeric non-convergence: {what} (best error bound {best_error:e})")]
    Precision { what: String, best_error: f64 },

    /// Evaluation at a pole of a rational function.
    #[error("pole encountered: {0}")]
    Pole(String),

    /// Expression syntax error with a byte position into the input.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub fn parse(position: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: msg.into(),
        }
    }

    /// Process exit code for the CLI: usage/parse and domain problems map to 1,
    /// numeric non-convergence to 2, capacity limits to 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Domain(_) | Error::Pole(_) => 1,
            Error::Precision { .. } => 2,
            Error::Capacity(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
