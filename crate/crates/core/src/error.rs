use thiserror::Error;

use crate::catalog::{FamilyId, SolutionSet};
use crate::expr::ParseError;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    /// The closed form for `family` failed validation against the numeric
    /// oracle. `fallback` holds the oracle's roots for the same request.
    #[error("closed form for {family} is erratum-unresolved; numeric fallback attached")]
    Erratum {
        family: FamilyId,
        fallback: Box<SolutionSet>,
    },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("no catalog family matches: {}", describe_misses(.nearest))]
    NoMatch { nearest: Vec<(FamilyId, String)> },
}

fn describe_misses(misses: &[(FamilyId, String)]) -> String {
    if misses.is_empty() {
        return "no structurally similar family".to_string();
    }
    misses
        .iter()
        .map(|(f, why)| format!("{f}: {why}"))
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParam(msg.into())
}
