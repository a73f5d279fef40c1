use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] flockrev_core::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("line {line}, column {column}: {message}")]
    Format { line: usize, column: usize, message: String },

    #[error("{}: {inner}", path.display())]
    InFile { path: PathBuf, inner: Box<CliError> },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn in_file(self, path: &Path) -> CliError {
        CliError::InFile { path: path.to_path_buf(), inner: Box::new(self) }
    }

    /// Process exit status: 3 for I/O and parse errors, 1 for everything
    /// else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Format { .. } => 3,
            CliError::Core(flockrev_core::Error::Parse { .. }) => 3,
            CliError::InFile { inner, .. } => inner.exit_code(),
            _ => 1,
        }
    }
}
