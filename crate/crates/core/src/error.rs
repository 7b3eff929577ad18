use thiserror::Error;

use crate::bits::BoolVec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension {n} exceeds the limit of {max}")]
    DimensionTooLarge { n: usize, max: usize },

    /// The vector is equidistant from the nearest positive and the nearest
    /// negative prototype, so the pair does not define a function there.
    #[error("tie at x={witness}: equidistant from positive and negative prototypes")]
    Tie { witness: BoolVec },

    #[error("prototype {vector} occurs in both P and N")]
    NotDisjoint { vector: BoolVec },

    #[error("P and N are both empty")]
    EmptyRepresentation,

    #[error("variable x{var} occurs with both polarities")]
    InconsistentLiterals { var: usize },

    #[error("variable index {var} out of range 1..={n}")]
    VarOutOfRange { var: usize, n: usize },

    #[error("operation would leave no variables")]
    DegenerateDimension,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph has an odd number of vertices ({0})")]
    OddVertexCount(usize),

    #[error("graph has {vertices} vertices; at most {max} supported")]
    VertexCountTooLarge { vertices: usize, max: usize },

    #[error("formula has no clauses")]
    EmptyFormula,

    #[error("malformed decision diagram: {0}")]
    MalformedBdd(String),

    #[error("{line}:{col}: syntax error: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("{line}: invariant violation: {message}")]
    InvariantViolation { line: usize, message: String },
}
