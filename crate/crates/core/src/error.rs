use alloc::string::String;
use core::fmt;

/// Errors raised by the laboratory's contracts.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Error {
    /// A vector or grid does not live in the expected dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// An index falls outside `1..=dimension`.
    IndexOutOfRange { index: usize, dimension: usize },
    /// A parameter violates its precondition (e.g. `p` outside `(0, 1]`).
    InvalidParameter(String),
    /// An enumeration would exceed the configured safety cap.
    SizeCapExceeded { size: usize, cap: usize },
    /// A caller-supplied object violates a stated contract
    /// (e.g. a set that is not a greedy set of the given vector).
    ContractViolation(String),
    /// A defining ratio came out infinite (`rhs = 0`, `lhs > 0`),
    /// which indicates a degenerate norm rather than a valid constant.
    DegenerateNorm(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::IndexOutOfRange { index, dimension } => {
                write!(f, "index {index} out of range 1..={dimension}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::SizeCapExceeded { size, cap } => {
                write!(f, "search size {size} exceeds cap {cap} (raise the cap to override)")
            }
            Error::ContractViolation(msg) => write!(f, "contract violation: {msg}"),
            Error::DegenerateNorm(msg) => write!(f, "degenerate norm: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
