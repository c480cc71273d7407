use thiserror::Error;

/// Errors raised while building or evaluating automata.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("index {index} out of range for dimension {dim}")]
    InvalidIndex { index: usize, dim: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A dense factor would exceed the configured basis-state cap.
    #[error("{what} needs {required} basis states, exceeding the cap of {cap}")]
    Capacity {
        what: String,
        required: usize,
        cap: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
