use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("height bound mismatch: {left} vs {right}")]
    HeightMismatch { left: usize, right: usize },

    #[error("composition of weight {weight} does not fit a word of length {length}")]
    WeightMismatch { weight: usize, length: usize },

    #[error("operation is undefined on the empty word")]
    EmptyWord,

    #[error("constant coefficient must be {expected}, found {found}")]
    ConstantTerm { expected: String, found: String },

    #[error("word {word} is outside the tensor space (dim {dim}, height {height})")]
    OutOfSpace { word: String, dim: usize, height: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("non-generic fiber: {0}")]
    NonGenericFiber(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }
}
