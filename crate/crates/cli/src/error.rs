use morita_core::AlgebraError;

use crate::document::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{src}: {error}")]
    Parse { src: String, error: ParseError },
    #[error("unknown builtin `{name}`; available: {available}")]
    UnknownBuiltin { name: String, available: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Algebra(AlgebraError::Capacity { .. }) => EXIT_CAPACITY,
            // internal consistency checks that only fail if a claimed result is false
            CliError::Algebra(AlgebraError::Inconsistent(_) | AlgebraError::WellDefinedness(_)) => EXIT_PROPERTY_FAILED,
            _ => EXIT_INVALID_INPUT,
        }
    }
}
