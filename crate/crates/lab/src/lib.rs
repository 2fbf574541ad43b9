//! Configs, file formats and commands around `reduction-core`.
//!
//! Exit codes: 0 pass, 1 check failure, 2 usage or config error,
//! 3 a trajectory reached a singular wall.

pub mod checks;
pub mod commands;
pub mod config;
pub mod output;

use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Regularity(String),
    #[error("{0}")]
    Runtime(String),
}

impl LabError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        LabError::Usage(format!("{}: {e}", path.display()))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Runtime(_) => 1,
            LabError::Usage(_) => 2,
            LabError::Regularity(_) => 3,
        }
    }
}

impl From<reduction_core::Error> for LabError {
    fn from(e: reduction_core::Error) -> Self {
        match e {
            reduction_core::Error::Regularity { .. } => LabError::Regularity(e.to_string()),
            _ => LabError::Runtime(e.to_string()),
        }
    }
}
