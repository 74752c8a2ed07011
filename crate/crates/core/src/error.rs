use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument error: {0}")]
    Argument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed plabic graph: {0}")]
    MalformedGraph(String),
    #[error("move not applicable: {0}")]
    Move(String),
    #[error("degenerate point: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
