use thiserror::Error;

/// Crate-wide error type. Variants correspond to contract violations the
/// caller can act on, not to internal bugs (those panic).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A cycle type or block multiset failed validation.
    #[error("invalid cycle type: {0}")]
    InvalidCycleType(String),

    /// Star product of supports that do not fit inside the ambient degree.
    #[error("support overflow: s1 + s2 = {total} exceeds n = {n}")]
    SupportOverflow { total: u64, n: u64 },

    /// The alternating group does not contain this class.
    #[error("odd permutation: cycle type {0} is not in the alternating group")]
    OddPermutation(String),

    /// A classical star product needs both supports below n/4.
    #[error("support too large: s = {s} must be < n/4 = {n}/4")]
    SupportTooLarge { s: u64, n: u64 },

    /// A descriptor or group specification failed validation.
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    /// Parse failure, with byte position into the input.
    #[error("parse error at byte {pos} in {input:?}: {msg}")]
    Parse {
        input: String,
        pos: usize,
        msg: String,
    },

    /// An enumeration would exceed its documented size guard.
    #[error("resource guard: {0}")]
    ResourceGuard(String),

    /// Degree or parameter outside the oracle's exhaustive range.
    #[error("out of oracle range: {0}")]
    OutOfRange(String),

    /// A normal subset that must be nontrivial was trivial.
    #[error("trivial subset: {0}")]
    TrivialSubset(String),

    /// Argument outside the documented domain of an operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Cache file was malformed or did not match the requested key.
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
