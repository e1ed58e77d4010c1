//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by image handling, parameter validation and interpolation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed pgm data: {0}")]
    PgmFormat(String),

    #[error("unsupported maxval {0}, only 255 is accepted")]
    UnsupportedMaxval(u32),

    #[error("pixel buffer holds {actual} bytes, {width}x{height} needs {expected}")]
    DataLength {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },

    #[error("image dimensions {0}x{1} are invalid")]
    BadDimensions(usize, usize),

    #[error("image {width}x{height} is too small, at least {min}x{min} required")]
    ImageTooSmall {
        width: usize,
        height: usize,
        min: usize,
    },

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("scale factor {0} is not supported, must be at least 2")]
    InvalidScale(u32),

    #[error("factor {factor} does not divide image dimension {dim}")]
    NotDivisible { dim: usize, factor: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("interpolated value {value} at output ({row}, {col}) is outside [0, 255]")]
    OutOfRange { row: usize, col: usize, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
