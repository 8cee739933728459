//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: operator is {operator}x{operator}, state has dimension {state}")]
    DimensionMismatch { operator: usize, state: usize },

    #[error("matrix is not unitary: max |U†U - I| entry is {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("state is not normalized: |norm - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("probability {value:.3e} at index {index} is negative beyond roundoff")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum} instead of 1")]
    ProbabilitySum { sum: f64 },

    #[error("empty probability distribution")]
    EmptyDistribution,

    #[error("state dimension {dimension} does not equal 2 x {n_sites} sites")]
    MarginalDimension { dimension: usize, n_sites: usize },

    #[error("walk needs at least 2 sites, got {0}")]
    TooFewSites(usize),

    #[error("start site {start} out of range for {n_sites} sites")]
    StartOutOfRange { start: usize, n_sites: usize },

    #[error("step count must be at least 1")]
    ZeroSteps,

    #[error("marked state {0} out of range 0..=7")]
    MarkedOutOfRange(u8),

    #[error("iteration count must be at least 1")]
    ZeroIterations,

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("stage {stage} out of range 1..={count}")]
    StageOutOfRange { stage: usize, count: usize },

    #[error("pitch {0} outside MIDI range 0..=127")]
    PitchOutOfRange(i64),

    #[error("value {value} outside the {span}-value span of scale {scale}")]
    OutsideScaleSpan {
        value: i64,
        span: usize,
        scale: String,
    },

    #[error("invalid scale {name}: {reason}")]
    InvalidScale { name: String, reason: String },

    #[error("invalid sonification config: {0}")]
    InvalidSonifyConfig(String),

    #[error("no input values to sonify")]
    EmptyInput,

    #[error("note events are not sorted by onset")]
    UnsortedEvents,

    #[error("invalid MIDI field: {0}")]
    InvalidMidiField(String),

    #[error("delta time {0} exceeds the 28-bit variable-length range")]
    DeltaOverflow(u64),

    #[error("{path}:{line}: invalid integer token {token:?}")]
    InvalidNumberToken {
        path: String,
        line: usize,
        token: String,
    },

    #[error("{0}: no numeric values in file")]
    EmptyNumberFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
