use std::io;

use gsamp_core::Error as CoreError;

/// Process exit code for configuration and input errors.
pub const EXIT_CONFIG: u8 = 2;
/// Process exit code for numerical failures.
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("io failure: {0}")]
    Io(#[from] io::Error),

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl Error {
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Config(_) | Error::Format(_) | Error::Io(_) => EXIT_CONFIG,
            Error::Core(e) => match e {
                CoreError::InvalidParameter(_)
                | CoreError::NonDivisor { .. }
                | CoreError::InvalidGraph(_)
                | CoreError::IndexOutOfRange { .. }
                | CoreError::NotBipartite
                | CoreError::UnequalParts { .. } => EXIT_CONFIG,
                _ => EXIT_NUMERICAL,
            },
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
