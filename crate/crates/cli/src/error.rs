use std::fmt;
use std::path::Path;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, keys, parameters or input contents: exit 2.
    Config(String),
    /// Filesystem failures: exit 1.
    Io(String),
    /// A statistical test failed: exit 3.
    TestFailed(usize),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Io(_) => ExitCode::from(1),
            CliError::Config(_) => ExitCode::from(2),
            CliError::TestFailed(_) => ExitCode::from(3),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::TestFailed(n) => write!(f, "{n} test(s) failed"),
        }
    }
}

impl From<cirng::Error> for CliError {
    fn from(e: cirng::Error) -> Self {
        match e {
            cirng::Error::Io(io) => CliError::Io(io.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}
