use thiserror::Error;

/// Errors raised by tree handling and the counting algorithms.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input is not a tree: {0}")]
    NotATree(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("anchors must be distinct vertices, got `{0}` twice")]
    SameVertex(String),

    #[error("vertex `{0}` is not a pendant vertex")]
    NotPendant(String),

    #[error("weight vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("k = {k} is too small for this operation (need k >= {min})")]
    KTooSmall { k: usize, min: usize },

    #[error("subtraction would make the coefficient of y^{dy}*z^{dz} negative")]
    NegativeCoefficient { dy: u32, dz: u32 },

    #[error("tree has {n} vertices, brute force is limited to {max}")]
    TooLarge { n: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
