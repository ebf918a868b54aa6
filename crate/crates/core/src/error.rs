use exact_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FusionError {
    #[error("objects belong to different categories")]
    ParentMismatch,
    #[error("simple {0} has no dual")]
    NoDual(usize),
    #[error("morphism is not an endomorphism")]
    NotEndomorphism,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("morphism is not central: {0}")]
    NotCentral(String),
    #[error("subobject is not stable under the half-braiding: {0}")]
    NotStable(String),
    #[error("object is not simple")]
    NotSimple,
    #[error("inconclusive randomized computation: {0}")]
    Inconclusive(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("a^2 != 2 for the supplied square root")]
    BadSquareRoot,
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid category data: {0}")]
    InvalidData(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Result<T> = std::result::Result<T, FusionError>;
