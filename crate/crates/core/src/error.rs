use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("presentation mismatch: expected `{expected}`, found `{found}`")]
    PresentationMismatch { expected: String, found: String },
    #[error("generator name collision: `{0}`")]
    NameCollision(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid coaction: {0}")]
    InvalidCoaction(String),
    #[error("tensor shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("element is not in the cotensor product: {0}")]
    NotInCotensor(String),
    #[error("inhomogeneous element where a homogeneous one is required: {0}")]
    Inhomogeneous(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
