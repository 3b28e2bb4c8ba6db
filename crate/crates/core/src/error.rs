use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An exact division left a remainder.
    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("permutation has length {got}, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("invalid family or matrix parameters: {0}")]
    InvalidSpec(String),

    /// A request exceeds a configured size or cardinality bound.
    #[error("{what} of size {size} exceeds the configured limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("tridiagonal input lengths are inconsistent: {0}")]
    LengthMismatch(String),

    #[error("polynomial is not palindromic")]
    NotPalindromic,

    #[error("(n={n}, k={k}) violates the theorem hypothesis: {reason}")]
    HypothesisViolated { n: usize, k: usize, reason: String },

    #[error("lemma precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
