//! Brute-force root finding: a uniform sign-change scan refined by bisection.
//!
//! This path shares nothing with the closed forms it is used to check. It
//! never calls W itself; any W inside `f` comes from the caller.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootSearchConfig {
    pub lo: f64,
    pub hi: f64,
    pub subdivisions: usize,
    /// Absolute bisection tolerance on x.
    pub bisect_tol: f64,
    pub max_bisect: usize,
}

impl RootSearchConfig {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        let cfg = RootSearchConfig {
            lo,
            hi,
            ..Self::default()
        };
        cfg.check()?;
        Ok(cfg)
    }

    pub fn with_subdivisions(mut self, n: usize) -> Self {
        self.subdivisions = n;
        self
    }

    pub fn check(&self) -> Result<()> {
        if !(self.lo < self.hi) || !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(invalid(format!("search interval [{}, {}] is empty", self.lo, self.hi)));
        }
        if self.subdivisions < 2 {
            return Err(invalid("need at least 2 subdivisions"));
        }
        Ok(())
    }
}

impl Default for RootSearchConfig {
    fn default() -> Self {
        RootSearchConfig {
            lo: 0.0,
            hi: 1.0,
            subdivisions: 4096,
            bisect_tol: 1e-13,
            max_bisect: 200,
        }
    }
}

/// All sign-change roots of `f` on `[cfg.lo, cfg.hi]`, ascending.
///
/// Non-finite samples end a bracket, so no bracket spans a pole. A bracket
/// whose refined point has `|f|` larger than both endpoint values is treated
/// as a jump discontinuity and dropped. Tangential roots are not found.
pub fn find_roots<F: Fn(f64) -> f64>(f: F, cfg: &RootSearchConfig) -> Vec<f64> {
    if cfg.check().is_err() {
        return Vec::new();
    }
    let n = cfg.subdivisions;
    let step = (cfg.hi - cfg.lo) / n as f64;
    let xs: Vec<f64> = (0..=n)
        .map(|i| if i == n { cfg.hi } else { cfg.lo + step * i as f64 })
        .collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();

    let mut roots = Vec::new();
    for i in 0..n {
        let (a, b) = (xs[i], xs[i + 1]);
        let (fa, fb) = (fs[i], fs[i + 1]);
        if !fa.is_finite() || !fb.is_finite() {
            continue;
        }
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if i + 1 == n && fb == 0.0 {
            roots.push(b);
            continue;
        }
        if (fa < 0.0) == (fb < 0.0) || fb == 0.0 {
            continue;
        }
        if let Some(r) = bisect(&f, a, b, fa, cfg) {
            let scale = fa.abs().max(fb.abs());
            if f(r).abs() <= scale {
                roots.push(r);
            }
        }
    }

    let dedup = 10.0 * cfg.bisect_tol;
    let mut out: Vec<f64> = Vec::with_capacity(roots.len());
    for r in roots {
        match out.last() {
            Some(&last) if (r - last).abs() <= dedup.max(4.0 * f64::EPSILON * r.abs()) => {}
            _ => out.push(r),
        }
    }
    out
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, fa: f64, cfg: &RootSearchConfig) -> Option<f64> {
    let neg_at_a = fa < 0.0;
    for _ in 0..cfg.max_bisect {
        let m = 0.5 * (a + b);
        if b - a <= cfg.bisect_tol || m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if !fm.is_finite() {
            return None;
        }
        if (fm < 0.0) == neg_at_a {
            a = m;
        } else {
            b = m;
        }
    }
    let (fa, fb) = (f(a).abs(), f(b).abs());
    Some(if fa <= fb { a } else { b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn quadratic() {
        let cfg = RootSearchConfig::new(0.0, 10.0).unwrap();
        let r = find_roots(|x| x * x - 4.0, &cfg);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn x_exp_x() {
        let cfg = RootSearchConfig::new(0.0, 5.0).unwrap();
        let r = find_roots(|x| x * x.exp() - E, &cfg);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_sum_root_has_small_residual() {
        let f = |x: f64| x + x.ln() - 2.0;
        let cfg = RootSearchConfig::new(0.1, 3.0).unwrap();
        let r = find_roots(f, &cfg);
        assert_eq!(r.len(), 1);
        assert!(f(r[0]).abs() <= 1e-10);
    }

    #[test]
    fn poles_are_not_roots() {
        let cfg = RootSearchConfig::new(-1.0, 1.3).unwrap();
        assert!(find_roots(|x| 1.0 / x, &cfg).is_empty());
        let r = find_roots(|x| (x - 0.5) / x, &cfg);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn non_finite_samples_split_the_scan() {
        let cfg = RootSearchConfig::new(-2.0, 2.0).unwrap();
        let r = find_roots(|x| if x < 0.0 { f64::NAN } else { x - 1.0 }, &cfg);
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn several_roots_sorted() {
        let cfg = RootSearchConfig::new(0.1, 10.0).unwrap();
        let r = find_roots(f64::sin, &cfg);
        assert_eq!(r.len(), 3);
        for (k, x) in r.iter().enumerate() {
            assert!((x - std::f64::consts::PI * (k + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_interval_yields_nothing() {
        let cfg = RootSearchConfig {
            lo: 1.0,
            hi: 0.0,
            ..Default::default()
        };
        assert!(find_roots(|x| x, &cfg).is_empty());
        assert!(RootSearchConfig::new(1.0, 0.0).is_err());
    }
}
