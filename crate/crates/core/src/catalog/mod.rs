//! Closed-form inverses for exponential/logarithmic equation families.
//!
//! Each [`FamilyId`] names one equation shape `y = F(x; params)`. The module
//! provides the forward map, the closed-form inverse built from W, a domain
//! report for an inversion request, and a validation gate that checks every
//! closed form against the brute-force root finder in [`crate::oracle`].
//!
//! Some families carry more than one reading of their inverse (the stated
//! formula and one or more intermediate derivation steps). The gate picks
//! the first reading that agrees with the oracle; a family for which no
//! reading agrees is *erratum-unresolved* and [`invert`] returns
//! [`Error::Erratum`](crate::Error::Erratum) with the oracle's roots.

mod family;
mod forward;
mod gate;
mod invert;
mod params;
mod readings;
pub mod sampling;

use serde::{Deserialize, Serialize};

use crate::lambert::BranchId;

pub use family::{FamilyId, FamilySpec};
pub use forward::forward;
pub(crate) use forward::check_params;
pub use gate::{
    canonical_grid, gate_record, gate_records, provenance_table, validate_family, GateRecord,
    GateStatus, Mismatch, ProvenanceReading, ProvenanceRecord, ReadingVerdict, ValidationRecord,
    GATE_GRID_POINTS, GATE_REL_TOL,
};
pub use invert::{
    domain_check, invert, invert_batch, invert_branch_difference, invert_with_reading, oracle_solve,
};
pub use params::ParamSet;

/// Which of a dual-case inverse produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    Case1,
    Case2,
}

/// Where a solution came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolutionSource {
    ClosedForm { reading: String },
    Oracle,
}

/// One real solution of `forward(family, params, x) = y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub x: f64,
    pub branches_used: Vec<BranchId>,
    pub case_tag: Option<CaseTag>,
    /// `|forward(x) - y|`.
    pub residual: f64,
    /// An intermediate quantity worth keeping, e.g. `W(x)` for S2.
    pub intermediate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub family: FamilyId,
    pub y: f64,
    pub source: SolutionSource,
    /// Sorted ascending by `x`.
    pub solutions: Vec<Solution>,
}

impl SolutionSet {
    pub fn xs(&self) -> Vec<f64> {
        self.solutions.iter().map(|s| s.x).collect()
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// Whether some solution is within `rel * max(1, |x|)` of `x`.
    pub fn contains_close(&self, x: f64, rel: f64) -> bool {
        self.solutions
            .iter()
            .any(|s| (s.x - x).abs() <= rel * x.abs().max(1.0))
    }
}

/// A W argument appearing in an inverse formula and where it must lie.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchArg {
    pub label: String,
    pub value: f64,
    pub required_interval: String,
}

/// Validity verdict for an inversion request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainReport {
    /// `true` iff `violated` is empty.
    pub valid: bool,
    pub branch_args: Vec<BranchArg>,
    pub violated: Vec<String>,
    /// Informational findings that do not by themselves invalidate the request.
    pub notes: Vec<String>,
}

/// Residual bound every returned solution satisfies.
pub fn residual_bound(y: f64) -> f64 {
    1e-8 * y.abs().max(1.0)
}
