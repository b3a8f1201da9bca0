use std::path::PathBuf;

/// Errors raised by solvers, projections and the file formats.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("value outside the domain of {geometry}: {detail}")]
    Domain {
        geometry: &'static str,
        detail: String,
    },

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("parse error in {path}: {detail}")]
    Parse { path: PathBuf, detail: String },

    #[error("unknown solver `{0}`")]
    UnknownSolver(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(context: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            actual,
        })
    }
}
