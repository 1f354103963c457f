//! Power towers and their base inverses (tetra roots).

use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Error, Result};
use crate::lambert::{w, BranchId, INV_E};

/// A right-associated power tower `base^base^...^base` of `height` copies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub base: f64,
    pub height: u32,
}

impl TowerSpec {
    pub fn new(base: f64, height: u32) -> Result<Self> {
        if !(base > 0.0) || !base.is_finite() {
            return Err(invalid(format!("tower base must be positive and finite, got {base}")));
        }
        if height == 0 {
            return Err(invalid("tower height must be at least 1"));
        }
        Ok(TowerSpec { base, height })
    }

    pub fn eval(&self) -> Result<f64> {
        tower(self.base, self.height)
    }
}

/// Smallest base of the principal tetra-root regime, `e^{-1/e}`.
pub fn principal_min_base() -> f64 {
    (-INV_E).exp()
}

/// `tower(a, 1) = a`, `tower(a, n) = a^tower(a, n-1)`.
pub fn tower(base: f64, height: u32) -> Result<f64> {
    TowerSpec::new(base, height)?;
    let mut acc = base;
    for _ in 1..height {
        acc = base.powf(acc);
    }
    if !acc.is_finite() {
        return Err(Error::Overflow(format!("tower({base}, {height}) exceeds f64 range")));
    }
    Ok(acc)
}

/// Natural log of `tower(base, height)`, finite in cases where the tower
/// itself overflows (`ln tower(b, n) = tower(b, n-1) ln b`).
pub fn tower_ln(base: f64, height: u32) -> Result<f64> {
    TowerSpec::new(base, height)?;
    if height == 1 {
        return Ok(base.ln());
    }
    let mut acc = base;
    for _ in 2..height {
        acc = base.powf(acc);
    }
    Ok(acc * base.ln())
}

/// Tetra square root: the `r` with `r^r = x`, `r = e^{W0(ln x)}`.
pub fn tsr(x: f64) -> Result<f64> {
    if !(x >= principal_min_base()) {
        return Err(domain(format!("tsr needs x >= e^(-1/e), got {x}")));
    }
    Ok(w(BranchId::Principal, x.ln())?.exp())
}

/// `n`-th tetra root: the base `b >= e^{-1/e}` with `tower(b, n) = x`.
///
/// `n = 1` is the identity and `n = 2` is [`tsr`]; larger heights are found
/// by bisection.
pub fn tnr(x: f64, n: u32) -> Result<f64> {
    match n {
        0 => Err(invalid("tetra root height must be at least 1")),
        1 => Ok(x),
        2 => tsr(x),
        _ => {
            if !(x > 0.0) || !x.is_finite() {
                return Err(domain(format!("tetra root of non-positive or infinite value {x}")));
            }
            tnr_ln(x.ln(), n)
        }
    }
}

/// [`tnr`] taking `ln x`, for targets beyond the f64 range.
pub fn tnr_ln(ln_x: f64, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(invalid("tetra root height must be at least 1"));
    }
    if ln_x.is_nan() || ln_x == f64::INFINITY {
        return Err(domain(format!("tetra root of log-target {ln_x}")));
    }
    if n == 1 {
        return Ok(ln_x.exp());
    }
    let g = |b: f64| -> f64 {
        match tower_ln(b, n) {
            Ok(v) if v.is_nan() => f64::INFINITY,
            Ok(v) => v - ln_x,
            Err(_) => f64::INFINITY,
        }
    };

    let mut lo = principal_min_base();
    let g_lo = g(lo);
    if g_lo > 0.0 {
        if g_lo <= 1e-15 * ln_x.abs().max(1.0) {
            return Ok(lo);
        }
        return Err(domain(format!(
            "x = e^{ln_x} is below the principal minimum of the height-{n} tower"
        )));
    }
    let mut hi = 2.0_f64;
    let mut grown = 0;
    while g(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
        grown += 1;
        if grown > 64 {
            return Err(Error::Convergence {
                iterations: grown,
                residual: g(hi).abs(),
            });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Ok(mid);
        }
        if gm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Pick the endpoint with the smaller log-residual.
    Ok(if g(lo).abs() <= g(hi).abs() { lo } else { hi })
}

/// Tetra cube root, `tnr(x, 3)`.
pub fn tcr(x: f64) -> Result<f64> {
    tnr(x, 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_values() {
        assert_eq!(tower(2.0, 1).unwrap(), 2.0);
        assert_eq!(tower(2.0, 2).unwrap(), 4.0);
        assert_eq!(tower(2.0, 3).unwrap(), 16.0);
        assert_eq!(tower(3.0, 3).unwrap(), 7_625_597_484_987.0);
        assert!(matches!(tower(3.0, 4), Err(Error::Overflow(_))));
        assert!(tower(0.0, 2).is_err());
        assert!(tower(2.0, 0).is_err());
    }

    #[test]
    fn tower_ln_past_overflow() {
        let l = tower_ln(3.0, 4).unwrap();
        assert!((l - 7_625_597_484_987.0 * 3f64.ln()).abs() <= 1e-3);
    }

    #[test]
    fn tsr_values() {
        assert!((tsr(4.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((tsr(27.0).unwrap() - 3.0).abs() < 1e-14);
        assert_eq!(tsr(1.0).unwrap(), 1.0);
        assert!(tsr(0.5).is_err());
    }

    #[test]
    fn tnr_values() {
        assert!((tnr(16.0, 3).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(tnr(7.5, 1).unwrap(), 7.5);
        assert!((tnr(7_625_597_484_987.0, 3).unwrap() - 3.0).abs() < 1e-15);
        assert!((tnr(65536.0, 4).unwrap() - 2.0).abs() < 1e-15);
        assert!(tnr(0.5, 3).is_err());
    }
}
