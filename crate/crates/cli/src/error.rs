use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A problem with one workspace file.
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: fincat::Error,
    },
    #[error(transparent)]
    Core(#[from] fincat::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// The core error behind this one, if any.
    pub fn core(&self) -> Option<&fincat::Error> {
        match self {
            CliError::File { source, .. } => Some(source),
            CliError::Core(e) => Some(e),
            CliError::Usage(_) => None,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
