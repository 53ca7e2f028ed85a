use std::io;
use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

use susy_trm::Error as LibError;

/// Failures surfaced to the user, each mapped to one exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] LibError),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("cannot write {}: {source}", path.display())]
    Output { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError::Config(message.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Library(e) => match e {
                LibError::InvalidParameter(_) | LibError::Domain(_) | LibError::Branch => 2,
                LibError::SingularTransform(_)
                | LibError::InvalidSeedCombination(_)
                | LibError::Precondition(_)
                | LibError::SpectralCollision { .. }
                | LibError::DegenerateEnergy(_) => 3,
                LibError::QuadratureConvergence(_)
                | LibError::Numerical(_)
                | LibError::Specfun(_) => 5,
            },
            CliError::Verification(_) => 4,
            CliError::Output { .. } => 5,
        }
    }

    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "config",
            3 => "singular",
            4 => "verification",
            _ => "numerical",
        }
    }
}

#[derive(Serialize)]
pub struct ErrorDocument<'a> {
    pub schema: &'static str,
    pub error: ErrorBody<'a>,
}

#[derive(Serialize)]
pub struct ErrorBody<'a> {
    pub kind: &'a str,
    pub code: i32,
    pub message: String,
}

impl<'a> From<&'a CliError> for ErrorDocument<'a> {
    fn from(e: &'a CliError) -> Self {
        ErrorDocument {
            schema: crate::format::SCHEMA,
            error: ErrorBody {
                kind: e.kind(),
                code: e.exit_code(),
                message: e.to_string(),
            },
        }
    }
}
