use thiserror::Error;

/// Failures of a job, each tied to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, including bad flags.
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Singular(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Precondition(_) | CliError::Io(_) => 2,
            CliError::Singular(_) => 3,
        }
    }
}

impl From<cmnf::Error> for CliError {
    fn from(e: cmnf::Error) -> Self {
        use cmnf::Error as E;
        match e {
            E::Parse(m) => CliError::Parse(m),
            E::Precondition(m) => CliError::Precondition(m),
            E::Singular { .. } | E::Pole => CliError::Singular(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
