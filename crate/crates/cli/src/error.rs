use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(_) => EXIT_NUMERIC,
            _ => EXIT_CONFIG,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

/// Input problems are configuration errors; failures that only show up
/// while computing are numeric.
impl From<clt_bounds::Error> for CliError {
    fn from(e: clt_bounds::Error) -> Self {
        use clt_bounds::Error as E;
        match e {
            E::Numeric(_) | E::SupportTooLarge(_) | E::SupNormViolated { .. } | E::NotPositiveDefinite(_) => {
                CliError::Numeric(e.to_string())
            }
            E::InvalidDistribution(_) | E::InvalidArgument(_) | E::DimensionMismatch { .. } | E::Unsupported(_) => {
                CliError::Config(e.to_string())
            }
        }
    }
}
