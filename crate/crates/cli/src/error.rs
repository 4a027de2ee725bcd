use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] twistlab_core::Error),
    #[error(transparent)]
    Specht(#[from] twistlab_specht::Error),
    #[error(transparent)]
    Lab(#[from] twistlab_lab::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("fixtures: {0}")]
    Fixtures(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => crate::EXIT_USAGE,
            _ => crate::EXIT_ERROR,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
