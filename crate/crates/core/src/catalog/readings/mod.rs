//! Closed-form inverse formulas, transcribed as written, one or more per family.

mod products;
mod sums;

use super::{BranchArg, CaseTag, FamilyId, ParamSet};
use crate::lambert::{eval_w0_exp, w, BranchId, BRANCH_POINT, INV_E};

/// A candidate preimage before forward re-evaluation.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Candidate {
    pub x: f64,
    pub branches: Vec<BranchId>,
    pub case: Option<CaseTag>,
    pub intermediate: Option<f64>,
}

impl Candidate {
    pub fn new(x: f64, branches: Vec<BranchId>) -> Self {
        Candidate {
            x,
            branches,
            case: None,
            intermediate: None,
        }
    }

    pub fn case(mut self, tag: CaseTag) -> Self {
        self.case = Some(tag);
        self
    }

    pub fn mid(mut self, v: f64) -> Self {
        self.intermediate = Some(v);
        self
    }
}

/// Records W arguments and constraint failures while a formula runs.
#[derive(Debug, Default)]
pub(crate) struct Trace {
    pub args: Vec<BranchArg>,
    pub violated: Vec<String>,
    pub notes: Vec<String>,
}

/// Arguments this far below `-1/e` are still treated as the branch point.
const SLACK: f64 = 1e-14;

impl Trace {
    fn record(&mut self, label: &str, z: f64, interval: &str) {
        self.args.push(BranchArg {
            label: label.to_string(),
            value: z,
            required_interval: interval.to_string(),
        });
    }

    /// Every real branch value `W_k(z)`; reports a violation when there is none.
    pub fn w_all(&mut self, label: &str, z: f64) -> Vec<(BranchId, f64)> {
        self.record(label, z, BranchId::Principal.domain_label());
        if z.is_nan() || z < BRANCH_POINT - SLACK {
            self.violated
                .push(format!("{label} = {z} is below -1/e (no real W)"));
            return Vec::new();
        }
        let mut out = Vec::with_capacity(2);
        if let Ok(v) = w(BranchId::Principal, z) {
            out.push((BranchId::Principal, v));
        }
        if z < 0.0 && (z + INV_E).abs() > SLACK {
            self.record(&format!("{label} (W-1)"), z, BranchId::Secondary.domain_label());
            if let Ok(v) = w(BranchId::Secondary, z) {
                out.push((BranchId::Secondary, v));
            }
        }
        out
    }

    /// Real branches of `W(k e^l)`, staying in log space when `k e^l`
    /// overflows.
    pub fn w_scaled_exp(&mut self, label: &str, k: f64, l: f64) -> Vec<(BranchId, f64)> {
        let z = k * l.exp();
        if z.is_finite() || k <= 0.0 {
            return self.w_all(label, z);
        }
        self.record(label, z, BranchId::Principal.domain_label());
        match eval_w0_exp(l + k.ln()) {
            Ok(r) => vec![(BranchId::Principal, r.value)],
            Err(e) => {
                self.violated.push(format!("{label}: {e}"));
                Vec::new()
            }
        }
    }

    /// `W_branch(z)`, or a violation if `z` is outside that branch's domain.
    pub fn w_on(&mut self, label: &str, z: f64, branch: BranchId) -> Option<f64> {
        self.record(label, z, branch.domain_label());
        match w(branch, z) {
            Ok(v) => Some(v),
            Err(_) => {
                self.violated.push(format!(
                    "{label} = {z} is outside {} required by W{}",
                    branch.domain_label(),
                    branch.index()
                ));
                None
            }
        }
    }

    /// Record `msg` as a violation unless `ok`.
    pub fn need(&mut self, ok: bool, msg: impl Into<String>) -> bool {
        if !ok {
            self.violated.push(msg.into());
        }
        ok
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }
}

pub(crate) type SolveFn = fn(&ParamSet, f64, &mut Trace) -> Vec<Candidate>;

/// One way of reading a family's inverse.
pub(crate) struct Reading {
    /// `"stated"` for the tabulated formula, otherwise the derivation step used.
    pub name: &'static str,
    pub latex: &'static str,
    pub solve: SolveFn,
}

pub(crate) fn readings(family: FamilyId) -> &'static [Reading] {
    use FamilyId::*;
    match family {
        P1 => products::P1,
        P2 => products::P2,
        P3 => products::P3,
        P4 => products::P4,
        P5 => products::P5,
        P6 => products::P6,
        P7 => products::P7,
        P8 => products::P8,
        P9 => products::P9,
        P10 => products::P10,
        P11 => products::P11,
        S1 => sums::S1,
        S2 => sums::S2,
        S3 => sums::S3,
        S4 => sums::S4,
        S5 => sums::S5,
        S6 => sums::S6,
        S7 => sums::S7,
        S8 => sums::S8,
        S9 => sums::S9,
        C3 => sums::C3,
        C5 => sums::C5,
        C6 => sums::C6,
        C10 => sums::C10,
        BernoulliGen => products::BERNOULLI,
    }
}

pub(crate) fn pv(p: &ParamSet, name: &str) -> f64 {
    p.get(name).unwrap_or(f64::NAN)
}

pub(crate) fn is_int(v: f64) -> bool {
    v.is_finite() && v.fract() == 0.0
}

pub(crate) fn is_even_int(v: f64) -> bool {
    is_int(v) && (v / 2.0).fract() == 0.0
}

/// Real values of `y^{1/c}`: both signs for even integer `c`, the signed
/// root for odd integer `c` and negative `y`.
pub(crate) fn real_roots(y: f64, c: f64, tr: &mut Trace) -> Vec<f64> {
    if y > 0.0 {
        let r = y.powf(1.0 / c);
        if is_even_int(c) {
            vec![r, -r]
        } else {
            vec![r]
        }
    } else if y < 0.0 {
        if is_int(c) && !is_even_int(c) {
            vec![-(-y).powf(1.0 / c)]
        } else {
            tr.need(false, format!("y^(1/c) is not real for y = {y}, c = {c}"));
            Vec::new()
        }
    } else if c > 0.0 {
        vec![0.0]
    } else {
        tr.need(false, "y^(1/c) is undefined at y = 0 for c < 0");
        Vec::new()
    }
}

/// Branch-difference core shared by P4, P11 and the Bernoulli family.
///
/// `returning` is the W term meant to give back `target`, so its branch is
/// the one whose range holds `target`. The other term takes every admissible
/// branch, skipping the pairing that cancels identically.
pub(crate) fn branch_difference(
    tr: &mut Trace,
    free_z: f64,
    target: f64,
    returning_z: f64,
    mut build: impl FnMut(f64, f64) -> f64,
) -> Vec<Candidate> {
    let k = BranchId::for_value(target);
    let Some(wk) = tr.w_on("returning W-arg", returning_z, k) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (j, wj) in tr.w_all("W-arg", free_z) {
        if j == k && free_z == returning_z {
            continue;
        }
        out.push(Candidate::new(build(wj, wk), vec![j, k]));
    }
    out
}
