use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different number fields")]
    FieldMismatch,
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("edge {0} is not flippable")]
    NotFlippable(usize),
    #[error("invalid isometry: {0}")]
    InvalidIsometry(String),
    #[error("closure mismatch: {0}")]
    ClosureMismatch(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("degenerate Ptolemy assignment: {0}")]
    DegenerateAssignment(String),
    #[error("closure residual is nonzero at edge {0}")]
    ResidualNonzero(usize),
    #[error("scaling parameter must be nonzero")]
    ZeroScalar,
}

pub type Result<T> = std::result::Result<T, Error>;
