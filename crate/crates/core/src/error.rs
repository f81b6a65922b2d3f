use thiserror::Error;

use crate::simplicial::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed operator word: symbol {position} ({symbol}) is out of range at dimension {dim}")]
    MalformedWord { position: usize, symbol: String, dim: usize },

    #[error("face index {index} out of range for a simplex of dimension {dim}")]
    FaceOutOfRange { index: usize, dim: usize },

    #[error("degeneracy index {index} out of range for a simplex of dimension {dim}")]
    DegeneracyOutOfRange { index: usize, dim: usize },

    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::simplicial::MAX_DIM)]
    DimensionTooLarge(usize),

    #[error("invalid simplicial set: {0}")]
    InvalidSet(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown space `{0}`")]
    UnknownSpace(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("complex mismatch: {0}")]
    ComplexMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("simplicial identities violated in {} place(s)", .0.violations.len())]
    Validation(ValidationReport),

    #[error("Sq^{i} of a degree-{j} cocycle is not a cocycle")]
    SquareNotCocycle { i: usize, j: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
