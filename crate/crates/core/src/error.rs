use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter `{0}` has no assigned value")]
    MissingParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("basis index {index} is out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("change-of-basis matrix is singular")]
    SingularMatrix,

    #[error("shift {shift} is out of range for an extension of dimension {dim}")]
    ShiftOutOfRange { shift: i64, dim: usize },

    #[error("algebra is not nilpotent: lower central series stabilizes at dimensions {dims:?}")]
    NonNilpotent { dims: Vec<usize> },

    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: String, reason: String },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("no claimed diagonal form is recorded for {0}")]
    NoClaimedWeights(String),

    #[error("parameter universes cannot be merged: {0}")]
    ParameterUniverse(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
