use thiserror::Error;

/// Errors raised by the testers, generators and file loaders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("coordinate {value} exceeds the supported bound of 2^30 in absolute value")]
    CoordinateOutOfRange { value: i64 },

    #[error("rational coordinate with zero denominator")]
    ZeroDenominator,

    #[error("operation requires a nonempty point set")]
    EmptySet,

    #[error("bounding volume {volume} exceeds the cap of {cap} lattice points")]
    VolumeCapExceeded { volume: u128, cap: u128 },

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("i/o: {0}")]
    Io(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
