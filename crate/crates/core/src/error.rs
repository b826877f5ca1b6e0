use thiserror::Error;

/// Errors raised by constructors and by operations whose preconditions can be
/// violated by caller input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("finite subsets must be nonempty")]
    EmptySubset,

    #[error("element does not belong to this group: {0}")]
    ForeignElement(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generator list must be nonempty")]
    NoGenerators,

    #[error("cannot invert zero")]
    DivisionByZero,

    #[error("polynomial must be a monic cubic with integer coefficients")]
    NotMonicCubic,

    #[error("polynomial {0} has a rational root and does not define a field")]
    Reducible(String),

    #[error("matrix does not have full row rank")]
    RankDeficient,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown system `{0}`")]
    UnknownSystem(String),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
