use thiserror::Error;

/// Errors raised by the matrix kernel, the state constructors, the cloners
/// and the sweep engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("matrix is not Hermitian (max |M - M^dag| = {0:e})")]
    NotHermitian(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("undefined ratio: input {0} component is zero")]
    UndefinedRatio(&'static str),

    #[error("bound violated: {0}")]
    BoundViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
