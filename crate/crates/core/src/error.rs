use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("k must be 2,3,4,6 (got {0})")]
    InvalidOrder(i64),
    #[error("not a rotation")]
    NotARotation,
    #[error("invalid transform: {0}")]
    InvalidTransform(String),
    #[error("tree edge has no fundamental path")]
    TreeEdge,
    #[error("invalid marking: {0}")]
    InvalidMarking(String),
    #[error("not a basis: the graph is not Γ-(2,2)")]
    NotABasis,
    #[error("zero direction on edge {0}")]
    ZeroDirection(usize),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("brute force refuses {0} edges (limit 20)")]
    TooManyEdges(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
