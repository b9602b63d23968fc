use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QvError {
    #[error("invalid dimension {0}: every subsystem needs d >= 2")]
    InvalidDimension(usize),
    #[error("register too large: {0} amplitudes exceeds the supported maximum")]
    TooLarge(String),
    #[error("label {label} out of range for dimension {dim}")]
    LabelOutOfRange { label: usize, dim: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("duplicate target subsystem {0}")]
    DuplicateTarget(usize),
    #[error("subsystem {index} does not exist (register has {len})")]
    NoSuchSubsystem { index: usize, len: usize },
    #[error("gate is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("forced outcome {outcome} has probability {probability:.3e}")]
    ZeroProbability { outcome: usize, probability: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("numerical invariant violated: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, QvError>;
