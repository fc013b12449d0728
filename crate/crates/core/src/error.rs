use thiserror::Error;

use crate::validate::ValidationReport;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("invalid ring order {0}: a unital ring with 1 != 0 needs at least 2 elements")]
    InvalidOrder(usize),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("{what} failed validation:\n{report}")]
    Invalid {
        what: String,
        report: ValidationReport,
    },

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("not a submodule: {0}")]
    NotASubmodule(String),

    #[error("predicate is only defined for proper {0}")]
    NotProper(&'static str),

    #[error("element {element} is not central: fails to commute with {witness}")]
    NotCentral { element: usize, witness: usize },

    #[error("capacity exceeded: {what} needs more than the cap of {cap}")]
    Capacity { what: String, cap: usize },

    #[error("induced operation is not well defined: {0}")]
    WellDefinedness(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("incompatible operands: {0}")]
    Mismatch(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
