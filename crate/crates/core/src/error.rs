use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a matrix factorization: entry ({row}, {col}) of {which} deviates from f*I")]
    NotFactorization {
        which: &'static str,
        row: usize,
        col: usize,
    },

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid catalog request: {0}")]
    Catalog(String),

    #[error("undetermined: {0}")]
    Undetermined(String),

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("invalid sequence: {0}")]
    Sequence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
