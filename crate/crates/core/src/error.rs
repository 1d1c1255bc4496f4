//! Crate-wide error type.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Everything that can go wrong in the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `θ` is outside the open interval `(0, 1)`.
    InvalidTheta(String),
    /// Support of the input vector exceeds the configured DP limit.
    SupportCapExceeded { support: usize, cap: usize },
    /// Support of the input vector exceeds the brute-force oracle limit.
    OracleCapExceeded { support: usize, cap: usize },
    /// A family or dual-ball enumeration grew past its configured cap.
    EnumerationCapExceeded { cap: usize },
    /// A position exceeds the configured element window.
    PositionWindowExceeded { position: u32, window: u32 },
    /// A finite set literal is not strictly increasing or contains 0.
    MalformedSet(String),
    /// A block tuple is empty, has an empty block, or is not successive.
    MalformedBlocks(String),
    /// A functional tree violates the norming-set invariants. `path` is the
    /// chain of child indices from the root to the offending node.
    InvalidFunctional { path: Vec<usize>, reason: String },
    /// A theorem hypothesis does not hold for the requested parameters.
    HypothesisViolation(String),
    /// An operation precondition does not hold for the given input.
    PreconditionViolation(String),
    /// A literal could not be parsed.
    ParseError(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidTheta(msg) => write!(f, "invalid theta: {msg}"),
            Error::SupportCapExceeded { support, cap } => {
                write!(f, "support size {support} exceeds DP cap {cap}")
            }
            Error::OracleCapExceeded { support, cap } => {
                write!(f, "support size {support} exceeds oracle cap {cap}")
            }
            Error::EnumerationCapExceeded { cap } => {
                write!(f, "enumeration exceeds cap {cap}")
            }
            Error::PositionWindowExceeded { position, window } => {
                write!(f, "position {position} exceeds element window {window}")
            }
            Error::MalformedSet(msg) => write!(f, "malformed set: {msg}"),
            Error::MalformedBlocks(msg) => write!(f, "malformed blocks: {msg}"),
            Error::InvalidFunctional { path, reason } => {
                write!(f, "invalid functional at path {path:?}: {reason}")
            }
            Error::HypothesisViolation(msg) => write!(f, "hypothesis violation: {msg}"),
            Error::PreconditionViolation(msg) => write!(f, "precondition violation: {msg}"),
            Error::ParseError(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
