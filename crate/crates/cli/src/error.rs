use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Numeric(String),

    #[error(transparent)]
    Solver(#[from] necrotica::Error),

    #[error("verification failed: {failures} of {total} checks did not pass")]
    Verification { failures: usize, total: usize },

    #[error("{} instance(s) of the sweep failed", .0)]
    Sweep(usize, i32),

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// 0 ok, 2 bad input, 3 numerical failure, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Solver(e) if e.is_input_error() => 2,
            CliError::Numeric(_) | CliError::Solver(_) | CliError::Verification { .. } => 3,
            CliError::Sweep(_, code) => *code,
            CliError::Io { .. } => 4,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
