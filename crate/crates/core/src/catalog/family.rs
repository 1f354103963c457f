use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ParamSet;
use crate::error::{invalid, Error};

/// One catalog family. Declaration order is the matcher's priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    P11,
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    S9,
    C3,
    C5,
    C6,
    C10,
    BernoulliGen,
}

impl FamilyId {
    pub const ALL: [FamilyId; 25] = [
        FamilyId::P1,
        FamilyId::P2,
        FamilyId::P3,
        FamilyId::P4,
        FamilyId::P5,
        FamilyId::P6,
        FamilyId::P7,
        FamilyId::P8,
        FamilyId::P9,
        FamilyId::P10,
        FamilyId::P11,
        FamilyId::S1,
        FamilyId::S2,
        FamilyId::S3,
        FamilyId::S4,
        FamilyId::S5,
        FamilyId::S6,
        FamilyId::S7,
        FamilyId::S8,
        FamilyId::S9,
        FamilyId::C3,
        FamilyId::C5,
        FamilyId::C6,
        FamilyId::C10,
        FamilyId::BernoulliGen,
    ];

    pub fn name(self) -> &'static str {
        self.spec().labels[0]
    }

    pub fn spec(self) -> &'static FamilySpec {
        &SPECS[self as usize]
    }

    /// Families whose inverse is a difference of two W branches.
    pub fn is_branch_difference(self) -> bool {
        matches!(
            self,
            FamilyId::P4 | FamilyId::P5 | FamilyId::P11 | FamilyId::BernoulliGen
        )
    }

    /// Families whose inverse has two square-root cases.
    pub fn is_dual_case(self) -> bool {
        matches!(self, FamilyId::S7 | FamilyId::S8)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    /// Accepts canonical names and the duplicate labels (`C1` means `P1`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.trim().to_ascii_uppercase();
        let key = match key.as_str() {
            "BERNOULLI" | "BERNOULLI-GEN" => "BERNOULLI_GEN",
            k => k,
        };
        FamilyId::ALL
            .into_iter()
            .find(|id| id.spec().labels.contains(&key))
            .ok_or_else(|| invalid(format!("unknown family '{s}'")))
    }
}

impl Serialize for FamilyId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for FamilyId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Static description of a family: labels, forward formula text, parameter
/// names, and the intervals used by the gate and the samplers.
#[derive(Debug)]
pub struct FamilySpec {
    pub id: FamilyId,
    /// Canonical name first, then duplicate labels.
    pub labels: &'static [&'static str],
    /// Catalog numbering of the forward formula(s).
    pub equations: &'static [u16],
    pub forward_latex: &'static str,
    pub params: &'static [&'static str],
    /// x-interval searched by the oracle (gate and erratum fallback).
    pub search: (f64, f64),
    /// x-range whose images form the gate's y-grid.
    pub gate_x: (f64, f64),
    /// Constants used by the gate, as `(name, value)`.
    pub canonical: &'static [(&'static str, f64)],
    /// S9 only: canonical `(a_k, b_k)` pairs.
    pub canonical_coeffs: &'static [(f64, f64)],
}

impl FamilySpec {
    pub fn canonical_params(&self) -> ParamSet {
        let mut p = ParamSet::from_pairs(self.canonical).expect("static parameter names");
        p.coeffs = self.canonical_coeffs.to_vec();
        p
    }
}

const POS: (f64, f64) = (1e-6, 60.0);

macro_rules! spec {
    ($id:ident, $labels:expr, $eq:expr, $tex:expr, $params:expr, $search:expr, $gate:expr, $canon:expr) => {
        spec!($id, $labels, $eq, $tex, $params, $search, $gate, $canon, &[])
    };
    ($id:ident, $labels:expr, $eq:expr, $tex:expr, $params:expr, $search:expr, $gate:expr, $canon:expr, $coeffs:expr) => {
        FamilySpec {
            id: FamilyId::$id,
            labels: $labels,
            equations: $eq,
            forward_latex: $tex,
            params: $params,
            search: $search,
            gate_x: $gate,
            canonical: $canon,
            canonical_coeffs: $coeffs,
        }
    };
}

static SPECS: [FamilySpec; 25] = [
    spec!(P1, &["P1", "C1"], &[1, 21], r"(ax+b)^{c}e^{dx+f}", &["a", "b", "c", "d", "f"],
        (-60.0, 60.0), (0.05, 6.0),
        &[("a", 1.3), ("b", 0.4), ("c", 1.5), ("d", -0.8), ("f", 0.3)]),
    spec!(P2, &["P2", "C4"], &[2, 24], r"e^{aW(x)+b}x^{c}", &["a", "b", "c"],
        POS, (0.05, 8.0),
        &[("a", 0.7), ("b", 0.3), ("c", 1.6)]),
    spec!(P3, &["P3", "C2"], &[3, 22], r"ax^{b}e^{cx^{d}}+f", &["a", "b", "c", "d", "f"],
        POS, (0.05, 3.0),
        &[("a", 1.2), ("b", 1.5), ("c", 0.6), ("d", 1.3), ("f", 0.4)]),
    spec!(P4, &["P4"], &[4], r"\frac{ax+b}{ce^{-dx}-f}", &["a", "b", "c", "d", "f"],
        (-60.0, 60.0), (0.5, 4.0),
        &[("a", 1.2), ("b", 0.5), ("c", 0.8), ("d", 1.7), ("f", 0.6)]),
    spec!(P5, &["P5"], &[5], r"ax \coth(bx)-ax", &["a", "b"],
        (-60.0, 60.0), (0.1, 4.0),
        &[("a", 1.1), ("b", 0.7)]),
    spec!(P6, &["P6"], &[6], r"\frac{ \ln(ax^{b})^{c}}{dx^{f}}", &["a", "b", "c", "d", "f"],
        POS, (1.0, 20.0),
        &[("a", 1.4), ("b", 1.2), ("c", 1.5), ("d", 0.9), ("f", 0.6)]),
    spec!(P7, &["P7"], &[7], r"ax^{b}W(x)^{c}", &["a", "b", "c"],
        POS, (0.05, 5.0),
        &[("a", 1.2), ("b", 0.9), ("c", 0.7)]),
    spec!(P8, &["P8"], &[9], r"W(x)e^{x}", &[],
        (-0.36, 60.0), (0.05, 3.0),
        &[]),
    spec!(P9, &["P9"], &[10], r"\frac{\ln(x)}{W(x)}", &[],
        POS, (0.2, 30.0),
        &[]),
    spec!(P10, &["P10"], &[11], r"\frac{aW(bx)}{x(W(bx)+1)}+c", &["a", "b", "c"],
        (-0.45, 60.0), (0.1, 6.0),
        &[("a", 1.3), ("b", 0.8), ("c", 0.5)]),
    spec!(P11, &["P11"], &[8], r"\frac{ \ln(ax+b)}{cx+d}", &["a", "b", "c", "d"],
        (-60.0, 60.0), (0.1, 6.0),
        &[("a", 1.3), ("b", 0.6), ("c", 0.7), ("d", 0.9)]),
    spec!(S1, &["S1"], &[12], r"ax+b+ce^{dx}", &["a", "b", "c", "d"],
        (-60.0, 60.0), (-2.0, 2.0),
        &[("a", 1.2), ("b", 0.3), ("c", -0.8), ("d", 0.9)]),
    spec!(S2, &["S2"], &[13], r"ax+b+ce^{W(x)}", &["a", "b", "c"],
        (-0.3678, 60.0), (-0.3, 5.0),
        &[("a", 1.1), ("b", 0.4), ("c", 0.9)]),
    spec!(S3, &["S3"], &[14], r"a(x+b)+c \ln(\frac{x}{d})", &["a", "b", "c", "d"],
        POS, (0.05, 5.0),
        &[("a", 1.3), ("b", 0.4), ("c", 0.8), ("d", 1.7)]),
    spec!(S4, &["S4", "C8"], &[15, 29], r"x^{a}+ \ln(x^{b})", &["a", "b"],
        POS, (0.05, 3.0),
        &[("a", 1.5), ("b", 0.7)]),
    spec!(S5, &["S5", "C9"], &[16, 30], r"\ln(x^{a})+W(x^{b})", &["a", "b"],
        POS, (0.05, 4.0),
        &[("a", 0.8), ("b", 1.3)]),
    spec!(S6, &["S6"], &[17], r"W(ax)-W(bx)", &["a", "b"],
        POS, (0.05, 5.0),
        &[("a", 1.8), ("b", 0.7)]),
    spec!(S7, &["S7"], &[18], r"W(x)+W(1/x)", &[],
        (0.01, 100.0), (1.2, 5.0),
        &[]),
    spec!(S8, &["S8"], &[19], r"2W(ax)-W([bx]^{2})", &["a", "b"],
        (1e-6, 1000.0), (0.1, 2.5),
        &[("a", 1.3), ("b", 0.9)]),
    spec!(S9, &["S9"], &[20], r"x \sum_{k=1}^{n}a_{k} \ln(b_{k}x)", &[],
        POS, (0.05, 4.0),
        &[], &[(0.8, 1.5), (0.6, 0.7)]),
    spec!(C3, &["C3", "C7"], &[23, 27], r"(ax^{b})^{cx^d}", &["a", "b", "c", "d"],
        POS, (0.05, 3.0),
        &[("a", 1.3), ("b", 0.8), ("c", 0.9), ("d", 1.2)]),
    spec!(C5, &["C5"], &[25], r"a(bx^{ \ln(c)})^{ \ln(x)}", &["a", "b", "c"],
        POS, (0.05, 5.0),
        &[("a", 1.2), ("b", 1.5), ("c", 1.8)]),
    spec!(C6, &["C6"], &[26], r"ax^{b sr_{2}(x^{c})}", &["a", "b", "c"],
        POS, (1.05, 4.0),
        &[("a", 1.2), ("b", 0.9), ("c", 1.3)]),
    spec!(C10, &["C10"], &[28], r"a \tsr(bx)^{cx}", &["a", "b", "c"],
        POS, (0.8, 4.0),
        &[("a", 1.3), ("b", 1.2), ("c", 0.8)]),
    spec!(BernoulliGen, &["BERNOULLI_GEN"], &[31], r"\frac{ax}{e^{-bx}-c}", &["a", "b", "c"],
        (-60.0, 60.0), (-4.0, 4.0),
        &[("a", 1.2), ("b", 0.9), ("c", 0.7)]),
];
