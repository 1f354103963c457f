//! Shared inputs for the criterion benches.

use wtool_core::{FamilyId, ParamSet};

/// Log-spaced principal-branch arguments in `[-1/e, 1e6]`.
pub fn w_inputs(n: usize) -> Vec<f64> {
    let lo = -wtool_core::lambert::INV_E;
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1).max(1) as f64;
            if t < 0.2 {
                lo + (0.0 - lo) * t / 0.2
            } else {
                10f64.powf(-6.0 + 12.0 * (t - 0.2) / 0.8)
            }
        })
        .collect()
}

/// Canonical constants and a y value inside the family's range.
pub fn invert_case(family: FamilyId) -> (ParamSet, f64) {
    let spec = family.spec();
    let p = spec.canonical_params();
    let x = 0.5 * (spec.gate_x.0 + spec.gate_x.1);
    let y = wtool_core::forward(family, &p, x).expect("canonical point is in the domain");
    (p, y)
}
