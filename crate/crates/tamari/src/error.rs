use thiserror::Error;

use crate::calculus::Violation;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed term syntax, with the byte offset of the offending token.
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// An operation that needs at least one context formula got none.
    #[error("empty context")]
    EmptyContext,

    /// An operation that needs at least one atom got an empty frontier.
    #[error("empty frontier")]
    EmptyFrontier,

    /// Two arguments that must share a frontier do not.
    #[error("frontier mismatch: [{left}] vs [{right}]")]
    FrontierMismatch { left: String, right: String },

    /// A brute-force or enumeration request exceeded its configured limit.
    #[error("size {size} exceeds the configured limit {limit}")]
    SizeLimit { size: usize, limit: usize },

    /// An argument violated a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A derivation failed structural validation.
    #[error("invalid derivation: {0}")]
    InvalidDerivation(Violation),
}
