use thiserror::Error;

use crate::scalar::FieldSpec;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid characteristic: {0}")]
    InvalidCharacteristic(String),
    #[error("algebra is not a Lie algebra")]
    NotLie,
    #[error("algebra is not associative and commutative")]
    NotAssocComm,
    #[error("algebra is not associative")]
    NotAssociative,
    #[error("algebra has no unit")]
    NotUnital,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("validation failed: {property} does not hold at basis indices {witness:?}")]
    Validation {
        property: &'static str,
        witness: Vec<usize>,
    },
    #[error("Jacobi identity fails at basis indices {0:?}")]
    JacobiFailure(Vec<usize>),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("extension data violates a requirement: {0}")]
    SpecViolation(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
    #[error("resource cap exceeded: {needed} matrix entries requested, cap is {cap}")]
    ResourceCap { needed: usize, cap: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
