//! CLI error type carrying the process exit code.
//!
//! Codes: 0 ok, 2 usage (clap's own), 3 parse/validation, 4 numerical
//! (not positive definite, degenerate model, unusable class structure),
//! 5 I/O.

use std::path::Path;

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub exit_code: i32,
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn usage(message: String) -> Self {
        CliError { message, exit_code: 2 }
    }

    pub fn parse(message: String) -> Self {
        CliError { message, exit_code: 3 }
    }

    pub fn numerical(message: String) -> Self {
        CliError { message, exit_code: 4 }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError { message: format!("{}: {err}", path.display()), exit_code: 5 }
    }

    /// Library errors raised while interpreting user-provided model or
    /// data content.
    pub fn from_model_input(err: ldaroc::Error) -> Self {
        match err {
            ldaroc::Error::NotPositiveDefinite
            | ldaroc::Error::DegenerateModel
            | ldaroc::Error::DegenerateHalfSpace
            | ldaroc::Error::MissingClass { .. }
            | ldaroc::Error::ClassTooSmall { .. } => CliError::numerical(err.to_string()),
            other => CliError::parse(other.to_string()),
        }
    }
}
