use thiserror::Error;

/// Errors surfaced by the `lqfa` binary, each tied to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] lqfa_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid DFA document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid event CSV: {0}")]
    Csv(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 3 for capacity errors, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(lqfa_core::Error::Capacity { .. }) => 3,
            _ => 2,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e.to_string())
    }
}
