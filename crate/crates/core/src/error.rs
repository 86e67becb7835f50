use thiserror::Error;

/// Errors raised by the algebraic constructions and checks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Operand shapes do not match the owning algebra or map.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// An operation was called on input violating its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A structure (table, irrep set, bialgebra) could not be built.
    #[error("construction failed: {0}")]
    Construction(String),

    /// Structured-text input failed to parse or did not match its schema.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
