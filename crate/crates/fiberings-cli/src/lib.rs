//! Library surface of the command-line tool: the construction file format
//! and the report model, shared with the integration tests.

pub mod file_format;
pub mod report;

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(#[from] fiberings_core::Error),
    #[error("cannot read {0}: {1}")]
    Io(PathBuf, String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 3,
            CliError::Io(_, _) => 3,
            CliError::Domain(e) if e.is_internal() => 4,
            CliError::Domain(_) => 2,
        }
    }
}
