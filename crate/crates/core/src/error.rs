use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("no crossings")]
    NoCrossings,

    #[error("invalid diagram: {}", .0.join("; "))]
    InvalidDiagram(Vec<String>),

    #[error("invalid operation table: {0}")]
    InvalidTable(String),

    #[error("order must be at least 1")]
    ZeroOrder,

    #[error("{t} is not a unit modulo {m}")]
    NotUnit { t: i64, m: u64 },

    #[error("basis length mismatch: expected {expected}, got {got}")]
    BasisMismatch { expected: usize, got: usize },

    #[error("map {0} is not an endomorphism")]
    NotEndomorphism(String),

    #[error("cochain {0} is not a 2-cocycle")]
    NotCocycle(String),

    #[error("coefficient group mismatch")]
    GroupMismatch,

    #[error("representation outputs need a finite coefficient group")]
    InfiniteGroup,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("{labels} labels given for a matrix of dimension {dim}")]
    LabelMismatch { labels: usize, dim: usize },

    #[error("unknown variable {0}")]
    UnknownVariable(String),

    #[error("cannot specialize: {0}")]
    Specialize(String),

    #[error("path enumeration exceeded the limit of {0} search steps")]
    PathLimit(usize),

    #[error("{0} not in catalog")]
    NotInCatalog(String),

    #[error("invalid job: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
