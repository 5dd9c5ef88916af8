use thiserror::Error;

/// Errors produced by schedule validation, coefficient construction, and
/// estimation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecoyError {
    #[error("schedule has no non-zero probe intensities")]
    EmptySchedule,

    #[error("negative probe intensity {0}")]
    NegativeIntensity(f64),

    #[error("probe intensity is not a finite number")]
    NonFiniteIntensity,

    #[error("probe intensities {0} and {1} coincide within relative tolerance 1e-12")]
    DuplicateIntensity(f64, f64),

    #[error("coefficient magnitude exceeds the f64 range; use exact-rational mode")]
    OverflowInFloatMode,

    #[error(
        "float arithmetic cannot certify the result to relative tolerance {tolerance:e}; \
         use exact-rational mode"
    )]
    PrecisionExhausted { tolerance: f64 },

    #[error("gain record does not match the schedule: {0}")]
    ScheduleMismatch(String),

    #[error("negative gain value {0}")]
    NegativeGain(f64),

    #[error("gain tensor is missing {} entries", missing.len())]
    IncompleteTensor { missing: Vec<Vec<f64>> },

    #[error("gain tensor of {entries} settings exceeds the cap of {cap}")]
    ModeCountOverflow { entries: usize, cap: usize },

    #[error("{0}")]
    DomainError(String),
}

pub type Result<T> = std::result::Result<T, DecoyError>;
