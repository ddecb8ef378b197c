//! Error type shared across the crate.
//!
//! Errors carry a class that the CLI maps onto its exit-code contract:
//! parse/usage problems exit 1, indeterminate outcomes exit 2, violated
//! preconditions exit 3.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Syntax error in an expression or document, with a byte position into
    /// the offending source fragment.
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },

    /// Structurally valid document with inconsistent content (bad domain,
    /// pieces that do not tile, an exponent below 1, ...).
    #[error("invalid input: {0}")]
    Domain(String),

    /// An operation was called outside its contract (witness construction on
    /// a singular inclusion, rearrangement on infinite measure, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The numeric evidence does not support a decision.
    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    /// Exit code the CLI uses for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Domain(_) | Error::Io(_) => 1,
            Error::Indeterminate(_) => 2,
            Error::Precondition(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
