use thiserror::Error;

use crate::groups::GroupKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("mixed groups: {0} and {1}")]
    GroupMismatch(GroupKind, GroupKind),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("scalar {0} is not an element of the field")]
    InvalidScalar(String),
    #[error("inconsistent labels: {0}")]
    InconsistentLabels(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("zero element rejected")]
    ZeroElement,
    #[error("tiling failed: {0}")]
    Tiling(String),
    #[error("net coverage failed: {uncovered} window elements uncovered, first {first}")]
    NetCoverage { uncovered: usize, first: String },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn param(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }
}
