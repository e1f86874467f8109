use thiserror::Error;

/// Errors produced by the generator, analysis and watermarking layers.
#[derive(Debug, Error)]
pub enum Error {
    /// Key material that cannot seed the generator (zero XORshift seed, wrong x0 width, ...).
    #[error("invalid key: {0}")]
    InvalidKey(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("insufficient data for {test}: need at least {needed}, got {got}")]
    InsufficientData {
        test: &'static str,
        needed: usize,
        got: usize,
    },
    #[error("value {value} out of range for {bits}-bit words")]
    OutOfRange { value: u64, bits: u32 },
    #[error("carrier capacity {capacity} bits is below the {needed} bits required")]
    Capacity { capacity: usize, needed: usize },
    #[error("dimension mismatch: {0}")]
    Dimensions(String),
    #[error("malformed image: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
