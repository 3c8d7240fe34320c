use thiserror::Error;
use yolkkit::YolkError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Convergence(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Convergence(_) => 3,
            CliError::Usage(_) => 4,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<YolkError> for CliError {
    fn from(e: YolkError) -> Self {
        match e {
            YolkError::ConvergenceFailure { .. } => CliError::Convergence(e.to_string()),
            YolkError::InvalidParameter(_) | YolkError::InvalidParams(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}
