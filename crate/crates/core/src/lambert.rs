//! Real branches of the Lambert W function.
//!
//! `W(z)` solves `w * e^w = z`. On the reals there are two branches meeting
//! at the branch point `z = -1/e`, `w = -1`:
//!
//! * the principal branch `W0`, defined on `[-1/e, inf)` with `W0 >= -1`;
//! * the secondary branch `W-1`, defined on `[-1/e, 0)` with `W-1 <= -1`.
//!
//! Evaluation uses Halley's method on `f(w) = w e^w - z` from branch-aware
//! starting points, and every result carries its residual.

use std::f64::consts::E;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Error, Result};

/// `1/e`.
pub const INV_E: f64 = 1.0 / E;

/// The branch point `-1/e`.
pub const BRANCH_POINT: f64 = -INV_E;

/// Selects one of the two real branches of W.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BranchId {
    /// `W0`, values `>= -1`.
    Principal,
    /// `W-1`, values `<= -1`.
    Secondary,
}

impl BranchId {
    pub const ALL: [BranchId; 2] = [BranchId::Principal, BranchId::Secondary];

    /// Conventional branch index, `0` or `-1`.
    pub fn index(self) -> i32 {
        match self {
            BranchId::Principal => 0,
            BranchId::Secondary => -1,
        }
    }

    pub fn from_index(k: i32) -> Option<Self> {
        match k {
            0 => Some(BranchId::Principal),
            -1 => Some(BranchId::Secondary),
            _ => None,
        }
    }

    /// Whether `z` lies in this branch's real domain (no slack applied).
    pub fn contains(self, z: f64) -> bool {
        match self {
            BranchId::Principal => z >= BRANCH_POINT,
            BranchId::Secondary => (BRANCH_POINT..0.0).contains(&z),
        }
    }

    /// The branch whose range contains `w`, i.e. the branch `b` with
    /// `W_b(w e^w) = w`. `w = -1` belongs to both; principal is returned.
    pub fn for_value(w: f64) -> Self {
        if w >= -1.0 {
            BranchId::Principal
        } else {
            BranchId::Secondary
        }
    }

    /// The other real branch.
    pub fn other(self) -> Self {
        match self {
            BranchId::Principal => BranchId::Secondary,
            BranchId::Secondary => BranchId::Principal,
        }
    }

    /// Human-readable domain, e.g. `[-1/e, inf)`.
    pub fn domain_label(self) -> &'static str {
        match self {
            BranchId::Principal => "[-1/e, inf)",
            BranchId::Secondary => "[-1/e, 0)",
        }
    }
}

impl fmt::Display for BranchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Result of a W evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WResult {
    pub value: f64,
    /// `|w e^w - z|` (for [`eval_w_base`], `|x base^x - y|`).
    pub residual: f64,
    pub iterations: usize,
}

/// Iteration controls for [`eval_w_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WConfig {
    /// Residual tolerance, relative to `max(1, |z|)`.
    pub tol: f64,
    pub max_iter: usize,
    /// Inputs this far below `-1/e` are clamped onto the branch point.
    pub branch_slack: f64,
}

impl Default for WConfig {
    fn default() -> Self {
        WConfig {
            tol: 1e-12,
            max_iter: 60,
            branch_slack: 1e-14,
        }
    }
}

/// Within this distance of `-1/e` the residual bound relaxes to
/// [`NEAR_BRANCH_TOL`] absolute.
const NEAR_BRANCH: f64 = 1e-6;
const NEAR_BRANCH_TOL: f64 = 1e-7;
const STEP_TOL: f64 = 1e-15;

/// `|w e^w - z|`.
pub fn residual(z: f64, w: f64) -> f64 {
    (w * w.exp() - z).abs()
}

/// Evaluates `W_branch(z)` with the default configuration.
pub fn eval_w(branch: BranchId, z: f64) -> Result<WResult> {
    eval_w_with(branch, z, &WConfig::default())
}

/// Shorthand for the value of [`eval_w`].
pub fn w(branch: BranchId, z: f64) -> Result<f64> {
    eval_w(branch, z).map(|r| r.value)
}

/// Clamps `z` onto the branch point if it lies within `slack` below it and
/// checks it against the branch domain.
pub fn clamp_to_domain(branch: BranchId, z: f64, slack: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(domain("W argument is NaN"));
    }
    let z = if z < BRANCH_POINT && z >= BRANCH_POINT - slack {
        BRANCH_POINT
    } else {
        z
    };
    if !z.is_finite() || !branch.contains(z) {
        return Err(domain(format!(
            "W_{} argument {z:e} outside {}",
            branch.index(),
            branch.domain_label()
        )));
    }
    Ok(z)
}

pub fn eval_w_with(branch: BranchId, z: f64, cfg: &WConfig) -> Result<WResult> {
    let z = clamp_to_domain(branch, z, cfg.branch_slack)?;

    if z == BRANCH_POINT {
        return Ok(WResult {
            value: -1.0,
            residual: residual(z, -1.0),
            iterations: 0,
        });
    }
    if z == 0.0 && branch == BranchId::Principal {
        return Ok(WResult {
            value: 0.0,
            residual: 0.0,
            iterations: 0,
        });
    }

    let mut w = initial_guess(branch, z);
    let mut iterations = 0;
    for it in 1..=cfg.max_iter {
        iterations = it;
        let ew = w.exp();
        let f = w * ew - z;
        if f == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        if !step.is_finite() {
            break;
        }
        let mut next = w - step;
        // Stay on the requested side of w = -1.
        match branch {
            BranchId::Principal if next < -1.0 => next = 0.5 * (w - 1.0),
            BranchId::Secondary if next > -1.0 => next = 0.5 * (w - 1.0),
            _ => {}
        }
        let moved = (next - w).abs();
        w = next;
        if moved <= STEP_TOL * w.abs().max(1.0) {
            break;
        }
    }

    let res = residual(z, w);
    let bound = if (z - BRANCH_POINT).abs() < NEAR_BRANCH {
        NEAR_BRANCH_TOL
    } else {
        cfg.tol * z.abs().max(1.0)
    };
    if !(res <= bound) {
        return Err(Error::Convergence {
            iterations,
            residual: res,
        });
    }
    Ok(WResult {
        value: w,
        residual: res,
        iterations,
    })
}

fn initial_guess(branch: BranchId, z: f64) -> f64 {
    let near_branch = (z - BRANCH_POINT).abs() < 0.05;
    match branch {
        BranchId::Principal if near_branch => {
            let p = (2.0 * (E * z + 1.0)).max(0.0).sqrt();
            -1.0 + p - p * p / 3.0
        }
        BranchId::Secondary if near_branch => {
            let p = -(2.0 * (E * z + 1.0)).max(0.0).sqrt();
            -1.0 + p - p * p / 3.0
        }
        BranchId::Principal if z > E => {
            let l = z.ln();
            l - l.ln()
        }
        BranchId::Principal if z.abs() <= 0.25 => z * (1.0 - z),
        BranchId::Principal => z.ln_1p(),
        BranchId::Secondary => {
            let l = (-z).ln();
            l - (-l).ln()
        }
    }
}

/// Generalised-base W: returns `x` with `x * base^x = y`, computed as
/// `W(ln(base) y) / ln(base)`.
pub fn eval_w_base(branch: BranchId, base: f64, y: f64) -> Result<WResult> {
    if !(base > 0.0) || base == 1.0 || !base.is_finite() {
        return Err(invalid(format!("base must be positive, finite and != 1, got {base}")));
    }
    let lb = base.ln();
    let inner = eval_w(branch, lb * y)?;
    let x = inner.value / lb;
    Ok(WResult {
        value: x,
        residual: (x * base.powf(x) - y).abs(),
        iterations: inner.iterations,
    })
}

/// `W0(e^l)` for arguments whose exponential may overflow.
///
/// For `l` below 700 this is [`eval_w`] on `e^l`; above, Newton's method on
/// `w + ln(w) = l`, and the reported residual is `|w + ln(w) - l|`.
pub fn eval_w0_exp(l: f64) -> Result<WResult> {
    if l.is_nan() || l == f64::INFINITY {
        return Err(Error::Overflow(format!("log-argument {l} is not finite")));
    }
    if l < 700.0 {
        return eval_w(BranchId::Principal, l.exp());
    }
    let mut w = l - l.ln();
    let mut iterations = 0;
    for it in 1..=60 {
        iterations = it;
        let g = w + w.ln() - l;
        let step = g / (1.0 + 1.0 / w);
        w -= step;
        if step.abs() <= STEP_TOL * w {
            break;
        }
    }
    let res = (w + w.ln() - l).abs();
    if !(res <= 1e-12 * l) {
        return Err(Error::Convergence {
            iterations,
            residual: res,
        });
    }
    Ok(WResult {
        value: w,
        residual: res,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let flo = f(lo);
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if (f(mid) > 0.0) == (flo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn anchors() {
        assert_eq!(eval_w(BranchId::Principal, 0.0).unwrap().value, 0.0);
        assert!((w(BranchId::Principal, E).unwrap() - 1.0).abs() <= 1e-15);
        assert_eq!(w(BranchId::Principal, BRANCH_POINT).unwrap(), -1.0);
        assert_eq!(w(BranchId::Secondary, BRANCH_POINT).unwrap(), -1.0);
    }

    #[test]
    fn secondary_matches_bisection() {
        let oracle = bisect(|w| w * w.exp() + 0.1, -20.0, -1.0);
        let got = w(BranchId::Secondary, -0.1).unwrap();
        assert!(got <= -1.0);
        assert!((got - oracle).abs() < 1e-12, "{got} vs {oracle}");
    }

    #[test]
    fn slack_clamps_just_below_branch_point() {
        let r = eval_w(BranchId::Principal, BRANCH_POINT - 5e-15).unwrap();
        assert_eq!(r.value, -1.0);
        assert!(matches!(
            eval_w(BranchId::Principal, BRANCH_POINT - 1e-10),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(eval_w(BranchId::Secondary, 0.0), Err(Error::Domain(_))));
        assert!(matches!(eval_w(BranchId::Secondary, 1.0), Err(Error::Domain(_))));
        assert!(matches!(eval_w(BranchId::Principal, -1.0), Err(Error::Domain(_))));
        assert!(matches!(eval_w(BranchId::Principal, f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn base_form() {
        let y = 2.0;
        let a = eval_w_base(BranchId::Principal, E, y).unwrap().value;
        let b = w(BranchId::Principal, y).unwrap();
        assert!((a - b).abs() < 1e-15);
        assert!((eval_w_base(BranchId::Principal, 2.0, 2.0).unwrap().value - 1.0).abs() < 1e-15);

        let oracle = bisect(|x| x * 10f64.powf(x) - 500.0, 0.0, 3.0);
        let got = eval_w_base(BranchId::Principal, 10.0, 500.0).unwrap().value;
        assert!((got - oracle).abs() < 1e-12);

        assert!(matches!(
            eval_w_base(BranchId::Principal, 1.0, 2.0),
            Err(Error::InvalidParam(_))
        ));
        assert!(matches!(
            eval_w_base(BranchId::Principal, -2.0, 2.0),
            Err(Error::InvalidParam(_))
        ));
    }

    #[test]
    fn residual_helper() {
        assert_eq!(residual(0.0, 0.0), 0.0);
        assert!(residual(E, 1.0) < 1e-15);
        let expected = ((-0.9f64) * (-0.9f64).exp() + INV_E).abs();
        assert_eq!(residual(-INV_E, -0.9), expected);
        assert!(expected > 0.0);
    }

    #[test]
    fn exp_form_agrees_and_extends() {
        for l in [-5.0, 0.0, 3.0, 50.0, 699.0] {
            let a = eval_w0_exp(l).unwrap().value;
            let b = w(BranchId::Principal, f64::exp(l)).unwrap();
            assert!((a - b).abs() <= 1e-14 * b.abs().max(1.0));
        }
        let big = eval_w0_exp(1e4).unwrap().value;
        assert!((big + big.ln() - 1e4).abs() < 1e-9);
    }
}
