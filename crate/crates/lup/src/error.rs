//! Error type shared by every module in the crate.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An item id that is not present in the list at hand.
    UnknownItem { id: u32 },
    /// Two lists (or a list and a target permutation) do not hold the same
    /// item set.
    ItemSetMismatch,
    /// A free exchange tried to move the accessed item away from the front.
    BackwardFreeMove { id: u32, from: usize, to: usize },
    /// An operation defined only for two-item lists was given another size.
    NotTwoItems { len: usize },
    /// An exact optimum was requested for more items than the configured
    /// factorial-state limit allows.
    CapacityExceeded { len: usize, max: usize },
    /// An advice tape was malformed, truncated, or over-read.
    InvalidAdvice(String),
    /// An algorithm name that none of the implementations recognize.
    UnknownAlgorithm(String),
    /// A numeric argument outside its documented domain.
    OutOfRange(String),
    /// A sequence file or other textual input that does not parse.
    Parse(String),
    /// A binary payload (compressed stream, packed tape) that does not
    /// decode.
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownItem { id } => write!(f, "item {id} is not in the list"),
            Error::ItemSetMismatch => write!(f, "lists do not hold the same items"),
            Error::BackwardFreeMove { id, from, to } => write!(
                f,
                "free exchange may only move item {id} forward (position {from} -> {to})"
            ),
            Error::NotTwoItems { len } => {
                write!(f, "operation requires exactly two items, list has {len}")
            }
            Error::CapacityExceeded { len, max } => write!(
                f,
                "exact optimum over {len} items exceeds the limit of {max} \
                 (set LUP_MAX_L to raise it)"
            ),
            Error::InvalidAdvice(msg) => write!(f, "invalid advice tape: {msg}"),
            Error::UnknownAlgorithm(name) => write!(f, "unknown algorithm: {name}"),
            Error::OutOfRange(msg) => write!(f, "argument out of range: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Format(msg) => write!(f, "malformed input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
