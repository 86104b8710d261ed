use thiserror::Error;

/// Errors raised by the library operations.
///
/// Verdicts (proper / spatial / in B_n ...) are never errors; these only
/// cover malformed input, violated preconditions and resource caps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("unknown cell `{0}`")]
    UnknownCell(String),

    #[error("`{0}` is not a vertex")]
    NotAVertex(String),

    #[error("face index {index} out of range for cell `{cell}` of dimension {dim}")]
    FaceIndex { cell: String, index: usize, dim: usize },

    #[error("cells have different dimensions ({0} and {1})")]
    DimensionMismatch(usize, usize),

    #[error("endpoint mismatch: `{left}` does not match `{right}`")]
    EndpointMismatch { left: String, right: String },

    #[error("not a subcomplex of the boundary of the {n}-cube: {reason}")]
    NotASubcomplex { n: usize, reason: String },

    #[error("invalid precubical set: {0}")]
    InvalidComplex(String),

    #[error("a grade bound is required: the complex has directed cycles between the endpoints")]
    GradeBoundRequired,

    #[error("segment {segment} stalls (constant sub-path)")]
    Stalling { segment: usize },

    #[error("malformed d-path: {0}")]
    MalformedPath(String),

    #[error("grid parameter must be at least 2, got {0}")]
    GridTooSmall(usize),

    #[error("pv program: {0}")]
    Program(String),

    #[error("resource cap exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
