//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by the extraction pipeline, the simulator and the I/O layer.
#[derive(Debug, Error)]
pub enum Error {
    /// Input sequence is shorter than an operation requires.
    #[error("insufficient samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    /// Trace contains non-finite samples or carries no power.
    #[error("invalid trace: {0}")]
    InvalidTrace(&'static str),

    /// Smoothing window would contain fewer than three points.
    #[error("span too small for curve length: window {window} over {len} points")]
    SpanTooSmall { window: usize, len: usize },

    /// Polyline with no points.
    #[error("empty curve")]
    EmptyCurve,

    /// Curve cannot be split into the requested number of segments.
    #[error("too many segments: {m} segments need at least {needed} points, curve has {len}")]
    TooManySegments { m: usize, needed: usize, len: usize },

    /// Pattern length below the two-point minimum.
    #[error("segment too short: need at least 2 points per segment, got {0}")]
    SegmentTooShort(usize),

    /// Paired sequences of unequal length.
    #[error("length mismatch: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },

    /// Pearson correlation of a constant sequence.
    #[error("undefined correlation: at least one input is constant")]
    UndefinedCorrelation,

    /// Empty input where at least one element is required.
    #[error("empty input")]
    EmptyInput,

    /// Parameter outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Underlying I/O failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Trace file that does not follow the on-disk format.
    #[error("malformed trace file at byte {offset}: {what}")]
    MalformedTrace { offset: u64, what: String },

    /// Configuration file rejected during eager validation.
    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
