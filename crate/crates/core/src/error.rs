use crate::algebra::Scalar;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("face index {index} out of range 0..={degree}")]
    FaceIndex { index: usize, degree: usize },

    #[error("operation requires chain degree >= 1")]
    DegreeZero,

    #[error("degree {0} is odd; an even degree is required")]
    OddDegree(usize),

    #[error("cochain is not cyclic on the sampled chains")]
    NotCyclic,

    #[error("cochain does not vanish on the all-units tensor")]
    NotNormalized,

    #[error("cochain is not a cocycle on the sampled chains")]
    NotCocycle,

    #[error("trace pair disagrees on the unit: {left} vs {right}")]
    UnitMismatch { left: Scalar, right: Scalar },

    #[error("projection requires a single homogeneous word length")]
    MixedLengths,

    #[error("unknown check '{0}'")]
    UnknownCheck(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Syntax error with the byte offset of the offending input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}
