//! Library side of the `modrep` command-line tool: input parsing, JSON
//! encoding, the on-disk result cache and the individual commands.

pub mod cache;
pub mod commands;
pub mod json;
pub mod spec;
pub mod verify;

use std::path::PathBuf;

use thiserror::Error;

pub use cache::Cache;
pub use commands::{ResultEnvelope, Timing, ARTIFACT_VERSION};
pub use spec::GroupSpec;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("computation failed: {0}")]
    Computation(String),
    #[error("verification failed: {0} check(s) did not match")]
    Mismatch(usize),
}

impl CliError {
    /// Process exit status: 1 for a verification mismatch, 2 for bad input,
    /// 3 for a failed computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Input(_) | CliError::Read { .. } | CliError::Write { .. } => 2,
            CliError::Computation(_) => 3,
        }
    }

    pub(crate) fn computation(e: impl std::fmt::Display) -> Self {
        CliError::Computation(e.to_string())
    }
}
