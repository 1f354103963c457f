use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Real constants of one family instance. Each family reads the subset it
/// needs; S9 reads `coeffs` instead.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    /// `(a_k, b_k)` pairs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coeffs: Vec<(f64, f64)>,
}

pub const PARAM_NAMES: [&str; 6] = ["a", "b", "c", "d", "f", "g"];

impl ParamSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from `(name, value)` pairs, e.g. `[("a", 1.0), ("b", 0.5)]`.
    pub fn from_pairs(pairs: &[(&str, f64)]) -> Result<Self> {
        let mut p = ParamSet::new();
        for &(name, v) in pairs {
            p.set(name, v)?;
        }
        Ok(p)
    }

    pub fn with(mut self, name: &str, v: f64) -> Self {
        self.set(name, v).expect("unknown parameter name");
        self
    }

    pub fn with_coeffs(mut self, coeffs: Vec<(f64, f64)>) -> Self {
        self.coeffs = coeffs;
        self
    }

    pub fn set(&mut self, name: &str, v: f64) -> Result<()> {
        *self.slot(name)? = Some(v);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        match name {
            "a" => self.a,
            "b" => self.b,
            "c" => self.c,
            "d" => self.d,
            "f" => self.f,
            "g" => self.g,
            _ => None,
        }
    }

    fn slot(&mut self, name: &str) -> Result<&mut Option<f64>> {
        Ok(match name {
            "a" => &mut self.a,
            "b" => &mut self.b,
            "c" => &mut self.c,
            "d" => &mut self.d,
            "f" => &mut self.f,
            "g" => &mut self.g,
            other => return Err(invalid(format!("unknown parameter '{other}'"))),
        })
    }

    /// The named value, which must be present and finite.
    pub fn req(&self, name: &str) -> Result<f64> {
        match self.get(name) {
            Some(v) if v.is_finite() => Ok(v),
            Some(v) => Err(invalid(format!("parameter {name} = {v} is not finite"))),
            None => Err(invalid(format!("parameter {name} is required"))),
        }
    }

    /// Like [`req`](Self::req) but also rejects zero.
    pub fn nonzero(&self, name: &str) -> Result<f64> {
        let v = self.req(name)?;
        if v == 0.0 {
            return Err(invalid(format!("parameter {name} must be nonzero")));
        }
        Ok(v)
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = PARAM_NAMES
            .iter()
            .filter_map(|n| self.get(n).map(|v| format!("{n}={v}")))
            .collect();
        if !self.coeffs.is_empty() {
            let cs: Vec<String> = self.coeffs.iter().map(|(a, b)| format!("({a},{b})")).collect();
            parts.push(format!("coeffs=[{}]", cs.join(",")));
        }
        write!(f, "{}", parts.join(" "))
    }
}
