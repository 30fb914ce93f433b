//! File formats, exports, timed verifier runs and the command-line driver
//! for `cdm-core`.

use std::fmt;
use std::path::PathBuf;

pub mod cli;
pub mod export;
pub mod graph_file;
pub mod report;

/// Everything the driver can fail with. [`CliError::exit_code`] and
/// [`CliError::prefix`] give the process-level view.
#[derive(Debug)]
pub enum CliError {
    Core(cdm_core::Error),
    /// Malformed input file, with a 1-based line number.
    Parse { line: usize, msg: String },
    Io { path: PathBuf, source: std::io::Error },
    /// Well-formed input that does not make sense.
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(cdm_core::Error::Budget { .. }) => 3,
            _ => 2,
        }
    }

    pub fn prefix(&self) -> &'static str {
        match self {
            CliError::Core(cdm_core::Error::Budget { .. }) => "budget:",
            CliError::Core(cdm_core::Error::Parse { .. }) | CliError::Parse { .. } => "parse:",
            _ => "error:",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Input(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<cdm_core::Error> for CliError {
    fn from(e: cdm_core::Error) -> Self {
        CliError::Core(e)
    }
}
