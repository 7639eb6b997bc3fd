use std::fmt;

/// Failures that stop a command before it produces a report.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags, unparsable input or a state that fails validation.
    Validation(String),
    /// The oracle refused an input beyond its size limits.
    Scale(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Scale(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "{m}"),
            CliError::Scale(m) => write!(f, "{m} (pass --force to run anyway)"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<eof_core::Error> for CliError {
    fn from(e: eof_core::Error) -> Self {
        match e {
            eof_core::Error::Scale(m) => CliError::Scale(format!("scale guard: {m}")),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub(crate) fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}
