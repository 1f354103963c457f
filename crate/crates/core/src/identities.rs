//! Numerical checks of the standard W identities.

use serde::Serialize;

use crate::error::{domain, invalid, Result};
use crate::lambert::{eval_w_base, w, BranchId};

/// Two sides of an identity evaluated numerically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_error: f64,
    pub rel_error: f64,
}

impl IdentityCheck {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        let abs_error = (lhs - rhs).abs();
        let rel_error = abs_error / 1f64.max(lhs.abs()).max(rhs.abs());
        IdentityCheck {
            lhs,
            rhs,
            abs_error,
            rel_error,
        }
    }
}

/// `e^{W(z)} = z / W(z)`.
pub fn exp_identity(z: f64, branch: BranchId) -> Result<IdentityCheck> {
    if z == 0.0 {
        return Err(invalid("exp identity divides by W(0) = 0"));
    }
    let wz = w(branch, z)?;
    Ok(IdentityCheck::new(wz.exp(), z / wz))
}

/// `ln(W(z)) = ln(z) - W(z)`, principal branch with `z > 0`.
pub fn log_difference_identity(z: f64, branch: BranchId) -> Result<IdentityCheck> {
    if branch != BranchId::Principal {
        return Err(domain("log-difference identity needs W(z) > 0 (principal branch)"));
    }
    if !(z > 0.0) {
        return Err(domain(format!("log-difference identity needs z > 0, got {z}")));
    }
    let wz = w(branch, z)?;
    Ok(IdentityCheck::new(wz.ln(), z.ln() - wz))
}

/// `n W(z) = W(n z^n / W(z)^{n-1})`.
///
/// The outer W takes the branch whose range contains `n W(z)`.
pub fn product_identity(n: f64, z: f64, branch: BranchId) -> Result<IdentityCheck> {
    if z < 0.0 && n.fract() != 0.0 {
        return Err(invalid(format!("z^n is not real for z = {z}, n = {n}")));
    }
    let wz = w(branch, z)?;
    let lhs = n * wz;
    if n == 1.0 {
        return Ok(IdentityCheck::new(lhs, wz));
    }
    let inner = n * z.powf(n) / wz.powf(n - 1.0);
    let outer = BranchId::for_value(lhs);
    let rhs = w(outer, inner)?;
    Ok(IdentityCheck::new(lhs, rhs))
}

/// `W(x) + W(y) = W(x y (1/W(x) + 1/W(y)))` for `x, y > 0`.
pub fn sum_identity(x: f64, y: f64) -> Result<IdentityCheck> {
    if !(x > 0.0) || !(y > 0.0) {
        return Err(domain(format!("sum identity needs x, y > 0, got ({x}, {y})")));
    }
    let wx = w(BranchId::Principal, x)?;
    let wy = w(BranchId::Principal, y)?;
    let rhs = w(BranchId::Principal, x * y * (1.0 / wy + 1.0 / wx))?;
    Ok(IdentityCheck::new(wx + wy, rhs))
}

/// Change of base: `W_a(y) = W_b(log_b(a) y) / log_b(a)`, where `W_a` solves
/// `x a^x = y`. Both sides go through [`eval_w_base`].
pub fn change_of_base_identity(a: f64, b: f64, y: f64, branch: BranchId) -> Result<IdentityCheck> {
    let lhs = eval_w_base(branch, a, y)?.value;
    let log_b_a = a.ln() / b.ln();
    let rhs = eval_w_base(branch, b, log_b_a * y)?.value / log_b_a;
    Ok(IdentityCheck::new(lhs, rhs))
}
