//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Error`]. The variants
//! separate the four failure classes that callers need to tell apart:
//! malformed input text, structurally invalid games, violated operation
//! preconditions, and explicit refusals of the brute-force oracle when an
//! instance exceeds its configured enumeration bounds.

use crate::game::Violation;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// The error type shared by all modules of this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The input text is not well-formed JSON or does not match the expected
    /// document shape. Carries the underlying decoder message, which includes
    /// line/column information.
    #[error("malformed document: {0}")]
    Malformed(#[from] serde_json::Error),

    /// The document parsed, but the described game breaks at least one
    /// structural invariant. All violations are collected, not just the first.
    #[error("invalid game: {}", format_violations(.0))]
    InvalidGame(Vec<Violation>),

    /// An operation was called outside its stated precondition, e.g. a
    /// template handed to an arena builder that contains edges of the wrong
    /// player, or a parity solver applied to a graph with a sink.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The brute-force oracle refuses to enumerate an instance that exceeds
    /// its configured bound. Refusal is always explicit; results are never
    /// silently truncated.
    #[error("oracle refused: {0}")]
    Refused(String),

    /// An I/O failure while reading or writing files (command-line driver).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

fn format_violations(violations: &[Violation]) -> String {
    let parts: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    parts.join("; ")
}

impl Error {
    /// Builds a contract-violation error from anything printable.
    pub fn contract(message: impl Into<String>) -> Self {
        Error::Contract(message.into())
    }

    /// Builds an oracle-refusal error from anything printable.
    pub fn refused(message: impl Into<String>) -> Self {
        Error::Refused(message.into())
    }
}
