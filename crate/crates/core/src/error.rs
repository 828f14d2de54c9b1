use thiserror::Error;

/// Errors raised by the arithmetic and reduction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field context: {0}")]
    InvalidContext(String),
    #[error("operation not supported: {0}")]
    Unsupported(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("Artin-Schreier equation has a polar right-hand side; not solvable integrally")]
    NonIntegral,
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("reduction failed: {0}")]
    Reduction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
