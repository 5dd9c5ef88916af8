use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("invalid source distribution: {0}")]
    InvalidSource(String),

    #[error("invalid yield model: {0}")]
    InvalidModel(String),

    #[error("series failed to converge: {0}")]
    NonConvergent(String),

    #[error("custom yield tensor has no tail rule; the gain series cannot be bounded")]
    TensorTailUnbounded,

    #[error("pulse count must be at least 1")]
    InvalidPulseCount,

    #[error("relative tolerance {0} outside (0, 1e-6]")]
    InvalidTolerance(f64),

    #[error("yield model covers {model} modes but {request} were requested")]
    ArityMismatch { model: usize, request: usize },

    #[error(transparent)]
    Core(#[from] decoy_core::DecoyError),
}

pub type Result<T> = std::result::Result<T, ChannelError>;
