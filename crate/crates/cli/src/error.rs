use std::fmt;

/// Command failure with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, configuration or input (exit code 2).
    Validation(String),
    /// Internal invariant violation (exit code 3).
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<uqcm::Error> for CliError {
    fn from(e: uqcm::Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
