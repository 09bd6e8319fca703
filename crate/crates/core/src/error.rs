use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input failed validation; the message names the offending piece.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("objects belong to different groups: {0}")]
    GroupMismatch(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("resource budget exceeded: {what} needs rank {requested}, cap is {cap}")]
    Budget {
        what: String,
        requested: usize,
        cap: usize,
    },

    #[error("truncation too small: degree {requested} needs length {needed}, have {available}; increase N")]
    Truncation {
        requested: usize,
        needed: usize,
        available: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A computed object failed an internal consistency check.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
