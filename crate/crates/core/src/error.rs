use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list is empty")]
    EmptyGraph,

    #[error("partition count must be at least 1")]
    NoPartitions,

    #[error("random-degree needs a full degree table for all {expected} vertices (got {actual})")]
    MissingDegrees { expected: usize, actual: usize },

    #[error("invalid synthetic graph parameters: {0}")]
    InvalidSpec(String),

    #[error("no edges have been assigned")]
    NoAssignments,

    #[error("baseline replication factor must be positive, got {0}")]
    NonPositiveBaseline(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
