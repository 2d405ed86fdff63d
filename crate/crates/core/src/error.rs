use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid hook (a={a}, b={b}): arm length must be at least 1")]
    InvalidHook { a: u32, b: u32 },

    #[error("shift {k} out of range for hook with leg length {b}")]
    InvalidShift { k: u32, b: u32 },

    #[error("invalid composition {0:?}: parts must be positive")]
    InvalidComposition(Vec<u32>),

    #[error("malformed query: {0}")]
    Malformed(String),

    #[error("degree mismatch: weight has total {weight}, module has degree {module}")]
    DegreeMismatch { weight: u32, module: u32 },

    #[error("straightening did not terminate within {0} steps")]
    FuelExhausted(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("certificate failure: {0}")]
    Certificate(String),

    #[error("matrix cache {path}: {source}")]
    CacheIo {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot parse triplet matrix: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
