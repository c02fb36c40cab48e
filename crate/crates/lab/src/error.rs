//! Error taxonomy with one exit code per failure class.

use pgreedy_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    /// Invalid configuration or command-line usage (exit 2).
    #[error("usage: {0}")]
    Usage(String),
    /// A required prior artifact is missing (exit 3).
    #[error("dependency: missing required file {0}")]
    Dependency(String),
    /// A search-space cap was exceeded (exit 4); raise with --max-dim.
    #[error("size: search space of size {size} exceeds cap {cap} (see --max-dim)")]
    SizeCap { size: usize, cap: usize },
    /// Computation failed (exit 1).
    #[error("compute: {0}")]
    Compute(String),
    /// IO failure while writing artifacts (exit 1).
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl From<CoreError> for LabError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SizeCapExceeded { size, cap } => LabError::SizeCap { size, cap },
            CoreError::InvalidParameter(_)
            | CoreError::DimensionMismatch { .. }
            | CoreError::IndexOutOfRange { .. } => LabError::Usage(e.to_string()),
            other => LabError::Compute(other.to_string()),
        }
    }
}

impl LabError {
    /// Stable process exit code for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Usage(_) => 2,
            LabError::Dependency(_) => 3,
            LabError::SizeCap { .. } => 4,
            LabError::Compute(_) | LabError::Io(_) => 1,
        }
    }

    /// One-line machine-parsable rendering: `error[<class>]: <message>`.
    pub fn diagnostic(&self) -> String {
        let class = match self {
            LabError::Usage(_) => "usage",
            LabError::Dependency(_) => "dependency",
            LabError::SizeCap { .. } => "size",
            LabError::Compute(_) => "compute",
            LabError::Io(_) => "io",
        };
        format!("error[{class}]: {self}")
    }
}
