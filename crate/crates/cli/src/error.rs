use qcorr_core::Error;
use std::fmt;
use std::path::Path;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed input files or values outside a flag's range.
    Usage(String),
    /// Input parsed but is not a density matrix.
    InvalidState(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::InvalidState(_) => ExitCode::from(3),
            CliError::Failure(_) => ExitCode::from(1),
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Failure(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::InvalidState(m) => write!(f, "invalid state: {m}"),
            CliError::Failure(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::InvalidState(m) => CliError::InvalidState(m),
            Error::NotHermitian(dev) => CliError::InvalidState(format!("not Hermitian (max deviation {dev:e})")),
            Error::NotUnitary(_) | Error::LayoutMismatch { .. } => CliError::Failure(err.to_string()),
            _ => CliError::Usage(err.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
