use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse permutation {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("not a permutation of 1..{len}: {values:?}")]
    NotAPermutation { values: Vec<usize>, len: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("indices {indices:?} out of range for length {len}")]
    IndexOutOfRange { indices: Vec<usize>, len: usize },

    #[error("{0} is not plus irreducible")]
    NotPlusIrreducible(String),

    #[error("operation undefined on the empty permutation")]
    EmptyPermutation,

    #[error("{what}: length {len} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, len: usize, cap: usize },

    #[error("search explored more than {limit} states")]
    StateBudget { limit: usize },

    #[error("refused: {0}")]
    Refused(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
}

impl Error {
    /// True for errors caused by enumeration or search budgets rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::StateBudget { .. } | Error::Refused(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
