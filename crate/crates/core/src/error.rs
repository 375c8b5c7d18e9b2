use thiserror::Error;

use crate::kernel::{Fault, KernelError};
use crate::report::CheckReport;

#[derive(Debug, Error)]
pub enum Error {
    /// A required check did not pass; the report says which.
    #[error("{what}: precondition failed ({})", .report.failing_ids().join(", "))]
    Precondition { what: String, report: Box<CheckReport> },
    #[error("missing structure: {0}")]
    MissingStructure(String),
    #[error("not compact: {detail}")]
    NotCompact { detail: String, pairs: Vec<(String, String)> },
    #[error("canonical identification unavailable: {0}")]
    NotStrict(String),
    #[error("lifted functor does not commute with the projection: {0}")]
    NonCommutingLift(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    /// A structure map could not be formed where it was required.
    #[error(transparent)]
    Structure(#[from] Fault),
}

impl Error {
    pub fn precondition(what: impl Into<String>, report: CheckReport) -> Self {
        Error::Precondition { what: what.into(), report: Box::new(report) }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
