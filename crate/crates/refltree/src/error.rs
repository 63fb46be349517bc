use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("point not in space: {0}")]
    PointNotInSpace(String),

    #[error("invalid subtree: {0}")]
    InvalidSubtree(String),

    #[error("gluing map may not transpose at an essential-vertex label")]
    TranspositionAtVertexLabel,

    #[error("enumeration index overflow: {0}")]
    EnumerationOverflow(String),

    #[error("inconsistent step: {0}")]
    InconsistentStep(String),

    #[error("partition rejected: {0}")]
    BadPartition(String),

    #[error("unknown generator: {0}")]
    UnknownGenerator(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
