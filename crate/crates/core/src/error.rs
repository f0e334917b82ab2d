use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("ground size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("ground size {size} exceeds the configured bound {bound}")]
    BoundExceeded { size: usize, bound: usize },

    #[error("element budget exceeded after {reached} elements")]
    BudgetExceeded { reached: usize },

    #[error("not a Brauer diagram: {0}")]
    NotBrauer(String),

    #[error("not a planar diagram: {0}")]
    NotPlanar(String),

    #[error("ramified pair is not a refinement (I must be finer than R): {0}")]
    NotRefinement(String),

    #[error("ramified partition is not balanced: {0}")]
    Unbalanced(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("token {0} has no image under this assignment")]
    UnboundToken(String),

    #[error("outside the domain: {0}")]
    OutsideDomain(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
