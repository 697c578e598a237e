use gem_core::GemError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("numerical error: {0}")]
    Numeric(GemError),
    #[error("self-test failed: {0}")]
    SelfTest(String),
}

impl CliError {
    /// 2 for bad input, 3 for numerical or physical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Parse { .. } | CliError::Io { .. } => 2,
            CliError::Numeric(_) | CliError::SelfTest(_) => 3,
        }
    }
}

impl From<GemError> for CliError {
    fn from(e: GemError) -> Self {
        match e {
            GemError::InvalidArgument(msg) => CliError::Input(msg),
            other => CliError::Numeric(other),
        }
    }
}
