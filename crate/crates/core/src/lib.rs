//! Real-valued Lambert W toolkit.
//!
//! * [`lambert`]: both real branches of W with residuals.
//! * [`identities`]: the exponential, log-difference, product and sum identities.
//! * [`tetration`]: power towers and tetra roots.
//! * [`catalog`]: closed-form inverses of exponential/logarithmic families,
//!   validated against [`oracle`].
//! * [`polar`]: polar forms and rotations of ln, exp, W and x e^x.
//! * [`applications`]: diode voltage and film thickness.
//! * [`expr`]: equation parsing and family matching.

// `!(v > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod applications;
pub mod catalog;
pub mod error;
pub mod expr;
pub mod identities;
pub mod lambert;
pub mod oracle;
pub mod polar;
pub mod tetration;

pub use catalog::{
    domain_check, forward, invert, invert_batch, invert_branch_difference, provenance_table,
    validate_family, CaseTag, DomainReport, FamilyId, ParamSet, Solution, SolutionSet,
};
pub use error::{Error, Result};
pub use expr::{match_family, parse, solve_text, Expr, MatchResult, ParseError};
pub use lambert::{eval_w, eval_w_base, residual, BranchId, WResult};
pub use polar::{CurveKind, RotationSpec};
