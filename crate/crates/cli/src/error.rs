use thiserror::Error;

/// Failures of a command, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("I/O error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// Invalid parameters or a dataset violating a hypothesis.
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 3,
            CliError::Invalid(_) => 2,
        }
    }
}

impl From<sgkit::Error> for CliError {
    fn from(e: sgkit::Error) -> Self {
        match e {
            sgkit::Error::Parse(msg) => CliError::Parse(msg),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
