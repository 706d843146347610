use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("element does not belong to the group")]
    NotInGroup,

    #[error("action is not faithful (kernel has order {kernel_order}); take the faithful quotient first")]
    NotFaithful { kernel_order: usize },

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid normal series: {0}")]
    InvalidSeries(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured budget or hard cap was exceeded. Distinct from a computed
    /// answer: callers must not treat it as a value.
    #[error("budget exceeded: {0}")]
    Exceeded(String),

    /// An internal invariant that is proven to hold was violated at runtime.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for budget-style failures ("try a bigger budget"), false for
    /// genuine input or logic errors.
    pub fn is_exceeded(&self) -> bool {
        matches!(self, Error::Exceeded(_))
    }
}
