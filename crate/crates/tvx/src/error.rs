//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series context mismatch")]
    ContextMismatch,
    #[error("argument not in the maximal ideal")]
    NotInMaximalIdeal,
    #[error("logarithm requires constant term 1")]
    NonUnitConstant,
    #[error("exponential requires constant term 0")]
    NonZeroConstant,
    #[error("exact division failed while clearing denominators: {0}")]
    Clearing(String),
    #[error("degenerate configuration persisted after {retries} resampling attempts")]
    Degenerate { retries: u32 },
    #[error("inadmissible path: {0}")]
    InadmissiblePath(String),
    #[error("log support does not conform to powers of a single scalar monomial")]
    NonConformingSupport,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("{0}")]
    Parse(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
