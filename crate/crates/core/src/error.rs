use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("field is not finite")]
    NotFinite,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("invalid composition: {0}")]
    BadComposition(String),
    #[error("block size mismatch: {0}")]
    BlockMismatch(String),
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("semisimple quotient is not split: {0}")]
    NotSplit(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("subalgebra is not proper")]
    NotProper,
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("characteristic {p} divides block size {n}")]
    CharacteristicDividesBlock { p: u64, n: usize },
    #[error("relations are not admissible: {0}")]
    NotAdmissible(String),
    #[error("cycle detected: {0}")]
    Cycle(String),
    #[error("{0} does not cover {1}")]
    NotCovering(String, String),
    #[error("underlying graph is not a tree")]
    NotTree,
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("{0} is not below {1}")]
    NotComparable(String, String),
    #[error("algebra carries no quiver or poset presentation")]
    NoPresentation,
    #[error("no arrows between {0} and {1}")]
    ZeroArrowSpace(String, String),
    #[error("algebra of dimension {0} has no proper unital subalgebra")]
    TooSmall(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
