use thiserror::Error;

/// Errors surfaced by the library and the batch front end.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch in {op}: {detail}")]
    Shape { op: &'static str, detail: String },

    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix is not skew-symmetric")]
    NotSkew,

    #[error("pfaffian of odd size {0}")]
    OddSize(usize),

    #[error("matrix is singular")]
    Singular,

    #[error("dimension bound violated: {0}")]
    DimensionBound(String),

    #[error("kind mismatch: {0}")]
    KindMismatch(String),

    #[error("membership check failed: {0}")]
    Membership(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("scenario {scenario} requires {requirement} (got {got})")]
    Condition {
        scenario: String,
        requirement: String,
        got: String,
    },

    #[error("missing dimension `{0}`")]
    MissingDim(String),

    #[error("cannot parse rational `{0}`")]
    ParseRational(String),

    #[error("guard exceeded: {0}")]
    Guard(String),

    #[error("invalid request: {0}")]
    Request(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Shape {
        op,
        detail: detail.into(),
    }
}
