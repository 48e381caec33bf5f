use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NOT_APPLICABLE: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{source_name}:{line}: {field}: {detail}")]
    Parse {
        source_name: String,
        line: usize,
        field: &'static str,
        detail: String,
    },

    #[error("{source_name}: {source}")]
    Distribution {
        source_name: String,
        #[source]
        source: entropy_gap::Error,
    },

    #[error("{0}")]
    Library(#[from] entropy_gap::Error),

    #[error("{0}")]
    Usage(String),

    #[error("report: {0}")]
    Report(String),

    #[error("{failed} of {total} reproduction checks failed")]
    ChecksFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use entropy_gap::Error as E;
        let lib = match self {
            Self::ChecksFailed { .. } => return EXIT_CHECK_FAILED,
            Self::Library(e) | Self::Distribution { source: e, .. } => e,
            _ => return EXIT_VALIDATION,
        };
        match lib {
            E::NotApplicable(_) | E::Unsupported(_) => EXIT_NOT_APPLICABLE,
            _ => EXIT_VALIDATION,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
