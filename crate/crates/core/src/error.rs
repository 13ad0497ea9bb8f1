use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HodgeError {
    #[error("{what} {value} out of range [{lo}, {hi}]")]
    Range { what: &'static str, value: i64, lo: i64, hi: i64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid specification: {0}")]
    Specification(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("table is not symmetric under (p,q) <-> (q,p): {0}")]
    Symmetry(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("invalid Hodge diamond: {0}")]
    InvalidDiamond(String),

    #[error("invalid mixed Hodge structure: {0}")]
    InvalidMhs(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("dimension overflowed 128 bits")]
    Overflow,
}

pub type Result<T, E = HodgeError> = std::result::Result<T, E>;
