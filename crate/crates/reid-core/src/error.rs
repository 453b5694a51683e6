//! Error type shared across the evaluation engine.

use thiserror::Error;

/// All failure modes surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed annotation input, with the 1-based line number.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Binary interchange file is unreadable; `offset` is the byte offset of
    /// the offending field or payload element.
    #[error("{path}: {msg} at offset {offset}")]
    BinaryFormat {
        path: String,
        msg: String,
        offset: u64,
    },

    /// An embedding row has (numerically) zero norm and cannot be normalized.
    #[error("zero-norm embedding row for crop {crop_id}")]
    ZeroNormRow { crop_id: usize },

    /// Matrix shapes or orderings that must agree do not.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Mask records that violate the RLE contract.
    #[error("mask error: {0}")]
    Mask(String),

    /// Parameter outside its documented domain (empty input, k out of range, ...).
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// Metric preconditions violated (no relevant items, empty query set, ...).
    #[error("metric error: {0}")]
    Metric(String),

    /// Pipeline configuration that cannot be run as given.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("toml error: {0}")]
    Toml(#[from] toml::de::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
