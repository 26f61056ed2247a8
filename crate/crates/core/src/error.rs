use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid density operator: {0}")]
    InvalidState(String),

    #[error("invalid unitary: {0}")]
    InvalidUnitary(String),

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("conditioning on null event (probability {0:e})")]
    NullEvent(f64),

    #[error("unknown outcome label {0}")]
    UnknownLabel(f64),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("measurement times must be strictly increasing, got {0:?}")]
    TimeOrder(Vec<usize>),

    #[error("correlation requires ±1 labels")]
    NonDichotomic,

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("label sets do not match")]
    LabelMismatch,

    #[error("distribution not normalized (sum {0})")]
    Unnormalized(f64),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid amplitude chain: {0}")]
    InvalidChain(String),

    #[error("invalid feasibility problem: {0}")]
    InvalidProblem(String),

    #[error("history count {count} exceeds limit {limit}")]
    TooManyHistories { count: u128, limit: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("grid too coarse: integral {0} deviates from 1 by more than 1e-3")]
    GridTooCoarse(f64),

    #[error("numerical breakdown: {0}")]
    Numerical(String),

    #[error("internal consistency error: {0}")]
    InternalConsistency(String),
}

impl Error {
    /// Errors that indicate a bug or numerical failure rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Numerical(_) | Error::InternalConsistency(_))
    }
}
