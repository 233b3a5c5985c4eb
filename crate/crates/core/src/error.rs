use thiserror::Error;

/// Errors returned by the kernels, the binning routines and the downsamplers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty series")]
    EmptySeries,
    #[error("invalid bin count")]
    InvalidBinCount,
    #[error("invalid index span")]
    InvalidIndexSpan,
    #[error("invalid worker count")]
    InvalidWorkerCount,
    #[error("invalid n_out")]
    InvalidNOut,
    #[error("n_out must be a multiple of {0}")]
    NOutNotMultiple(usize),
    #[error("n_out too small for LTTB")]
    NOutTooSmall,
    #[error("invalid ratio")]
    InvalidRatio,
    #[error("length mismatch: x has {x} elements, y has {y}")]
    LengthMismatch { x: usize, y: usize },
    #[error("unsupported dtype: {0}")]
    UnsupportedDtype(String),
    #[error("unknown algorithm: {0}")]
    UnknownAlgorithm(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
