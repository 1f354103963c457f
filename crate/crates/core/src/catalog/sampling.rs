//! Round-trip sampling: constants uniform in `[0.5, 2]`, x uniform in
//! `[1e-3, 10]` intersected with the forward domain.
//!
//! The caller supplies uniform `[0, 1)` draws, so any RNG can drive it.

use super::{forward, FamilyId, ParamSet};
use crate::tetration::principal_min_base;

pub const PARAM_RANGE: (f64, f64) = (0.5, 2.0);
pub const X_RANGE: (f64, f64) = (1e-3, 10.0);

/// Pairs drawn for S9.
pub const S9_TERMS: usize = 2;

fn lerp((lo, hi): (f64, f64), u: f64) -> f64 {
    lo + (hi - lo) * u
}

pub fn sample_params(family: FamilyId, uniform: &mut dyn FnMut() -> f64) -> ParamSet {
    let mut p = ParamSet::new();
    for name in family.spec().params {
        p.set(name, lerp(PARAM_RANGE, uniform())).expect("static parameter name");
    }
    if family == FamilyId::S9 {
        p.coeffs = (0..S9_TERMS)
            .map(|_| (lerp(PARAM_RANGE, uniform()), lerp(PARAM_RANGE, uniform())))
            .collect();
    }
    p
}

/// Whether `x` is a usable round-trip point: finite forward value and inside
/// the region the principal closed forms can return.
pub fn admissible(family: FamilyId, p: &ParamSet, x: f64) -> bool {
    let Ok(y) = forward(family, p, x) else {
        return false;
    };
    if !y.is_finite() || y.abs() > 1e200 {
        return false;
    }
    match family {
        // tcr only returns bases >= e^{-1/e}, i.e. tsr(bx) in that range.
        FamilyId::C10 => {
            let b = p.b.unwrap_or(f64::NAN);
            crate::tetration::tsr(b * x).is_ok_and(|s| s >= principal_min_base())
        }
        _ => true,
    }
}

/// Draw `(params, x)` until the point is admissible (at most `tries` times).
pub fn sample_case(family: FamilyId, uniform: &mut dyn FnMut() -> f64, tries: usize) -> Option<(ParamSet, f64)> {
    for _ in 0..tries {
        let p = sample_params(family, uniform);
        for _ in 0..8 {
            let x = lerp(X_RANGE, uniform());
            if admissible(family, &p, x) {
                return Some((p, x));
            }
        }
    }
    None
}
