use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field error: {0}")]
    Field(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("endpoint mismatch: {0}")]
    Endpoint(String),
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("not quadratic: {0}")]
    NotQuadratic(String),
    #[error("translation structure: {0}")]
    Translation(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
