//! Structural matching of normalised expressions against family templates.

use serde::Serialize;

use super::ast::Expr;
use super::norm::{normalize_n, N};
use super::parse::parse;
use crate::catalog::{invert, FamilyId, ParamSet, SolutionSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchResult {
    pub family: FamilyId,
    pub params: ParamSet,
    pub normalization_trace: Vec<String>,
}

/// Order in which templates are tried. It follows declaration order except
/// that BERNOULLI_GEN, a special case of P4 with `b = 0`, is tried first.
pub const MATCH_ORDER: [FamilyId; 25] = {
    use FamilyId::*;
    [
        P1, P2, P3, BernoulliGen, P4, P5, P6, P7, P8, P9, P10, P11, S1, S2, S3, S4, S5, S6, S7, S8,
        S9, C3, C5, C6, C10,
    ]
};

struct Miss {
    depth: u8,
    why: String,
}

type M<T> = std::result::Result<T, Miss>;

fn miss<T>(depth: u8, why: &str) -> M<T> {
    Err(Miss {
        depth,
        why: why.to_string(),
    })
}

fn opt<T>(v: Option<T>, depth: u8, why: &str) -> M<T> {
    v.ok_or_else(|| Miss {
        depth,
        why: why.to_string(),
    })
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Constant part and non-constant terms of a sum.
fn terms(n: &N) -> (f64, Vec<N>) {
    match n {
        N::Sum(ts) => {
            let mut k = 0.0;
            let mut rest = Vec::new();
            for t in ts {
                match t {
                    N::C(v) => k += v,
                    other => rest.push(other.clone()),
                }
            }
            (k, rest)
        }
        N::C(v) => (*v, Vec::new()),
        other => (0.0, vec![other.clone()]),
    }
}

/// Constant coefficient and remaining factors of a product. A constant
/// power of a product is spread over its factors.
fn factors(n: &N) -> (f64, Vec<N>) {
    let mut k = 1.0;
    let mut out = Vec::new();
    push_factor(n, 1.0, &mut k, &mut out);
    (k, out)
}

fn push_factor(n: &N, p: f64, k: &mut f64, out: &mut Vec<N>) {
    match n {
        N::C(v) => *k *= v.powf(p),
        N::Prod(fs) => {
            for f in fs {
                push_factor(f, p, k, out);
            }
        }
        N::Pow(b, e) if matches!(**b, N::Prod(_)) && e.konst().is_some() => {
            push_factor(b, p * e.konst().expect("checked"), k, out);
        }
        N::Pow(b, e) if e.konst().is_some() && p != 1.0 => {
            let q = e.konst().expect("checked") * p;
            out.push(N::Pow(b.clone(), Box::new(N::C(q))));
        }
        other if p == 1.0 => out.push(other.clone()),
        other => out.push(N::Pow(Box::new(other.clone()), Box::new(N::C(p)))),
    }
}

/// Remove the first item for which `f` yields a value.
fn take<T>(items: &mut Vec<N>, f: impl Fn(&N) -> Option<T>) -> Option<T> {
    for i in 0..items.len() {
        if let Some(v) = f(&items[i]) {
            items.remove(i);
            return Some(v);
        }
    }
    None
}

/// `p` in `x^p`.
fn xpow(n: &N) -> Option<f64> {
    match n {
        N::X => Some(1.0),
        N::Pow(b, e) if **b == N::X => e.konst(),
        _ => None,
    }
}

/// `(base, k)` for `base^k` with constant `k`, else `(n, 1)`.
fn pow_parts(n: &N) -> (&N, f64) {
    match n {
        N::Pow(b, e) if e.konst().is_some() => (b, e.konst().expect("checked")),
        other => (other, 1.0),
    }
}

/// `(a, b)` for `a*atom + b` with `a != 0`.
fn linear_in(n: &N, atom: &N) -> Option<(f64, f64)> {
    let (b, ts) = terms(n);
    let mut a = 0.0;
    for t in &ts {
        let (k, fs) = factors(t);
        if fs.len() == 1 && fs[0] == *atom {
            a += k;
        } else {
            return None;
        }
    }
    (a != 0.0).then_some((a, b))
}

fn linear(n: &N) -> Option<(f64, f64)> {
    linear_in(n, &N::X)
}

/// `k` for `k*x`.
fn scaled_x(n: &N) -> Option<f64> {
    let (k, fs) = factors(n);
    (fs.len() == 1 && fs[0] == N::X).then_some(k)
}

/// `(k, p)` for `k*x^p`.
fn xmono(n: &N) -> Option<(f64, f64)> {
    let (k, fs) = factors(n);
    if fs.len() != 1 {
        return None;
    }
    xpow(&fs[0]).map(|p| (k, p))
}

/// `(slope, intercept)` of a term `k*x` or `k*(ax+b)`.
fn lin_term(t: &N) -> Option<(f64, f64)> {
    let (k, fs) = factors(t);
    if fs.len() != 1 {
        return None;
    }
    linear(&fs[0]).map(|(a, b)| (k * a, k * b))
}

/// `(coefficient, inner)` for a term `k * head(inner)`.
fn coef_of(t: &N, head: fn(&N) -> Option<&N>) -> Option<(f64, N)> {
    let (k, fs) = factors(t);
    if fs.len() != 1 {
        return None;
    }
    head(&fs[0]).map(|inner| (k, inner.clone()))
}

fn exp_arg(n: &N) -> Option<&N> {
    match n {
        N::Exp(u) => Some(u),
        _ => None,
    }
}

fn ln_arg(n: &N) -> Option<&N> {
    match n {
        N::Ln(u) => Some(u),
        _ => None,
    }
}

fn w_arg(n: &N) -> Option<&N> {
    match n {
        N::W(u) => Some(u),
        _ => None,
    }
}

fn done(fs: &[N], depth: u8) -> M<()> {
    if fs.is_empty() {
        Ok(())
    } else {
        miss(depth, "unexpected extra factor or term")
    }
}

fn params(pairs: &[(&str, f64)]) -> ParamSet {
    ParamSet::from_pairs(pairs).expect("static parameter names")
}

fn single_term(n: &N) -> M<(f64, N)> {
    let (k, ts) = terms(n);
    if ts.len() != 1 {
        return miss(0, "expected a single product term");
    }
    Ok((k, ts.into_iter().next().expect("one term")))
}

fn match_one(family: FamilyId, n: &N) -> M<ParamSet> {
    use FamilyId::*;
    let wx = N::W(Box::new(N::X));
    match family {
        P1 => {
            let (k, mut fs) = factors(n);
            let (d, e0) = opt(take(&mut fs, |f| exp_arg(f).and_then(linear)), 0, "no exp(dx+f) factor")?;
            let ((a, b), c) = opt(
                take(&mut fs, |f| {
                    let (base, c) = pow_parts(f);
                    linear(base).map(|l| (l, c))
                }),
                1,
                "no (ax+b)^c factor",
            )?;
            done(&fs, 2)?;
            if !(k > 0.0) {
                return miss(2, "leading coefficient must be positive");
            }
            Ok(params(&[("a", a), ("b", b), ("c", c), ("d", d), ("f", e0 + k.ln())]))
        }
        P2 => {
            let (k, mut fs) = factors(n);
            let (a, b) = opt(take(&mut fs, |f| exp_arg(f).and_then(|u| linear_in(u, &wx))), 0, "no exp(aW(x)+b) factor")?;
            let c = opt(take(&mut fs, xpow), 1, "no x^c factor")?;
            done(&fs, 2)?;
            if !(k > 0.0) {
                return miss(2, "leading coefficient must be positive");
            }
            Ok(params(&[("a", a), ("b", b + k.ln()), ("c", c)]))
        }
        P3 => {
            let (f, t) = single_term(n)?;
            let (a, mut fs) = factors(&t);
            let (c, d, u0) = opt(
                take(&mut fs, |g| {
                    let (u0, ts) = terms(exp_arg(g)?);
                    if ts.len() != 1 {
                        return None;
                    }
                    xmono(&ts[0]).map(|(c, d)| (c, d, u0))
                }),
                0,
                "no exp(cx^d) factor",
            )?;
            let b = opt(take(&mut fs, xpow), 2, "no x^b factor")?;
            done(&fs, 3)?;
            Ok(params(&[("a", a * u0.exp()), ("b", b), ("c", c), ("d", d), ("f", f)]))
        }
        BernoulliGen => {
            let (k, mut fs) = factors(n);
            let (m, nb, kc) = opt(take(&mut fs, denominator_exp), 0, "no 1/(ce^{-bx}-f) factor")?;
            opt(take(&mut fs, |g| (xpow(g) == Some(1.0)).then_some(())), 1, "numerator is not a multiple of x")?;
            done(&fs, 2)?;
            Ok(params(&[("a", k / m), ("b", nb), ("c", -kc / m)]))
        }
        P4 => {
            let (k, mut fs) = factors(n);
            let (c, d, kf) = opt(take(&mut fs, denominator_exp), 0, "no 1/(ce^{-dx}-f) factor")?;
            let (a, b) = opt(take(&mut fs, linear), 1, "no (ax+b) numerator")?;
            done(&fs, 2)?;
            if kf == 0.0 {
                return miss(2, "denominator has no constant term");
            }
            Ok(params(&[("a", k * a), ("b", k * b), ("c", c), ("d", d), ("f", -kf)]))
        }
        P5 => {
            let (k, mut ts) = terms(n);
            if k != 0.0 || ts.len() != 2 {
                return miss(0, "expected two terms");
            }
            let (a, b) = opt(
                take(&mut ts, |t| {
                    let (a, mut fs) = factors(t);
                    let b = take(&mut fs, |g| match g {
                        N::Coth(u) => scaled_x(u),
                        _ => None,
                    })?;
                    (fs == [N::X]).then_some((a, b))
                }),
                0,
                "no ax coth(bx) term",
            )?;
            let k2 = opt(scaled_x(&ts[0]), 2, "no -ax term")?;
            if !close(k2, -a) {
                return miss(3, "the linear term must be -a x");
            }
            Ok(params(&[("a", a), ("b", b)]))
        }
        P6 => {
            let (k, mut fs) = factors(n);
            let ((a, b), c) = opt(
                take(&mut fs, |g| {
                    let (base, c) = pow_parts(g);
                    if let Some(inner) = ln_arg(base) {
                        return xmono(inner).map(|ab| (ab, c));
                    }
                    let (bb, inner) = factors(base);
                    (inner.len() == 1 && inner[0] == N::Ln(Box::new(N::X))).then_some(((1.0, bb), c))
                }),
                0,
                "no ln(ax^b)^c factor",
            )?;
            let p = opt(take(&mut fs, xpow), 1, "no x^{-f} factor")?;
            done(&fs, 2)?;
            Ok(params(&[("a", a), ("b", b), ("c", c), ("d", 1.0 / k), ("f", -p)]))
        }
        P7 => {
            let (a, mut fs) = factors(n);
            let c = opt(
                take(&mut fs, |g| {
                    let (base, c) = pow_parts(g);
                    (*base == N::W(Box::new(N::X))).then_some(c)
                }),
                0,
                "no W(x)^c factor",
            )?;
            let b = opt(take(&mut fs, xpow), 1, "no x^b factor")?;
            done(&fs, 2)?;
            Ok(params(&[("a", a), ("b", b), ("c", c)]))
        }
        P8 => {
            let (k, mut fs) = factors(n);
            opt(take(&mut fs, |g| (*g == N::Exp(Box::new(N::X))).then_some(())), 0, "no exp(x) factor")?;
            opt(take(&mut fs, |g| (*g == wx).then_some(())), 1, "no W(x) factor")?;
            done(&fs, 2)?;
            if k != 1.0 {
                return miss(2, "coefficient must be 1");
            }
            Ok(ParamSet::new())
        }
        P9 => {
            let (k, mut fs) = factors(n);
            opt(take(&mut fs, |g| (*g == N::Ln(Box::new(N::X))).then_some(())), 0, "no ln(x) factor")?;
            opt(take(&mut fs, |g| (pow_parts(g) == (&wx, -1.0)).then_some(())), 1, "no 1/W(x) factor")?;
            done(&fs, 2)?;
            if k != 1.0 {
                return miss(2, "coefficient must be 1");
            }
            Ok(ParamSet::new())
        }
        P10 => {
            let (c, t) = single_term(n)?;
            let (a, mut fs) = factors(&t);
            let arg = opt(
                take(&mut fs, |g| match g {
                    N::W(u) if scaled_x(u).is_some() => Some((**u).clone()),
                    _ => None,
                }),
                0,
                "no W(bx) factor",
            )?;
            let b = scaled_x(&arg).expect("checked");
            opt(take(&mut fs, |g| (xpow(g) == Some(-1.0)).then_some(())), 2, "no 1/x factor")?;
            opt(
                take(&mut fs, |g| {
                    let (base, p) = pow_parts(g);
                    let (one, ts) = terms(base);
                    (p == -1.0 && one == 1.0 && ts == [N::W(Box::new(arg.clone()))]).then_some(())
                }),
                3,
                "no 1/(W(bx)+1) factor",
            )?;
            done(&fs, 4)?;
            Ok(params(&[("a", a), ("b", b), ("c", c)]))
        }
        P11 => {
            let (k, mut fs) = factors(n);
            let (a, b) = opt(take(&mut fs, |g| ln_arg(g).and_then(linear)), 0, "no ln(ax+b) factor")?;
            let (c, d) = opt(
                take(&mut fs, |g| {
                    let (base, p) = pow_parts(g);
                    if p == -1.0 {
                        linear(base)
                    } else {
                        None
                    }
                }),
                1,
                "no 1/(cx+d) factor",
            )?;
            done(&fs, 2)?;
            Ok(params(&[("a", a), ("b", b), ("c", c / k), ("d", d / k)]))
        }
        S1 | S2 => {
            let (k, mut ts) = terms(n);
            if ts.len() != 2 {
                return miss(0, "expected two non-constant terms");
            }
            let (a, b0) = opt(take(&mut ts, lin_term), 0, "no ax term")?;
            let (m, u) = opt(coef_of(&ts[0], exp_arg), 2, "no c exp(...) term")?;
            let (d, u0) = if family == S1 {
                opt(linear(&u), 3, "exponent is not linear in x")?
            } else {
                let (s, u0) = opt(linear_in(&u, &wx), 3, "exponent is not W(x) + const")?;
                if s != 1.0 {
                    return miss(3, "exponent must be W(x) + const");
                }
                (1.0, u0)
            };
            let mut p = params(&[("a", a), ("b", k + b0), ("c", m * u0.exp())]);
            if family == S1 {
                p.set("d", d).expect("static name");
            }
            Ok(p)
        }
        S3 => {
            let (k, mut ts) = terms(n);
            if ts.len() != 2 {
                return miss(0, "expected two non-constant terms");
            }
            let (c, s) = opt(
                take(&mut ts, |t| coef_of(t, ln_arg).and_then(|(c, u)| scaled_x(&u).map(|s| (c, s)))),
                0,
                "no c ln(x/d) term",
            )?;
            let (a, b0) = opt(lin_term(&ts[0]), 2, "no a(x+b) term")?;
            Ok(params(&[("a", a), ("b", (k + b0) / a), ("c", c), ("d", 1.0 / s)]))
        }
        S4 => {
            let (k, mut ts) = terms(n);
            if k != 0.0 || ts.len() != 2 {
                return miss(0, "expected exactly two terms");
            }
            let b = opt(
                take(&mut ts, |t| coef_of(t, ln_arg).and_then(|(b, u)| (u == N::X).then_some(b))),
                0,
                "no ln(x^b) term",
            )?;
            let a = opt(xpow(&ts[0]), 2, "no x^a term")?;
            Ok(params(&[("a", a), ("b", b)]))
        }
        S5 => {
            let (k, mut ts) = terms(n);
            if k != 0.0 || ts.len() != 2 {
                return miss(0, "expected exactly two terms");
            }
            let a = opt(
                take(&mut ts, |t| coef_of(t, ln_arg).and_then(|(a, u)| (u == N::X).then_some(a))),
                0,
                "no ln(x^a) term",
            )?;
            let b = opt(w_arg(&ts[0]).and_then(xpow), 2, "no W(x^b) term")?;
            Ok(params(&[("a", a), ("b", b)]))
        }
        S6 | S7 | S8 => {
            let (k, mut ts) = terms(n);
            if k != 0.0 || ts.len() != 2 {
                return miss(0, "expected exactly two W terms");
            }
            let (k1, k2) = match family {
                S6 => (1.0, -1.0),
                S7 => (1.0, 1.0),
                _ => (2.0, -1.0),
            };
            let u = opt(
                take(&mut ts, |t| coef_of(t, w_arg).and_then(|(c, u)| (c == k1).then_some(u))),
                0,
                "no leading W term",
            )?;
            let (c2, v) = opt(coef_of(&ts[0], w_arg), 2, "no second W term")?;
            if c2 != k2 {
                return miss(2, "second W term has the wrong coefficient");
            }
            match family {
                S6 => {
                    let a = opt(scaled_x(&u), 3, "W argument is not ax")?;
                    let b = opt(scaled_x(&v), 3, "W argument is not bx")?;
                    Ok(params(&[("a", a), ("b", b)]))
                }
                S7 => {
                    let inv = |n: &N| xpow(n) == Some(-1.0);
                    if (u == N::X && inv(&v)) || (v == N::X && inv(&u)) {
                        Ok(ParamSet::new())
                    } else {
                        miss(3, "arguments must be x and 1/x")
                    }
                }
                _ => {
                    let a = opt(scaled_x(&u), 3, "W argument is not ax")?;
                    let (base, p) = pow_parts(&v);
                    let b = opt(scaled_x(base).filter(|_| p == 2.0), 3, "W argument is not (bx)^2")?;
                    Ok(params(&[("a", a), ("b", b)]))
                }
            }
        }
        S9 => {
            let (k, mut fs) = factors(n);
            opt(take(&mut fs, |g| (*g == N::X).then_some(())), 0, "no x factor")?;
            let rest = match fs.len() {
                0 => return miss(1, "no sum of logarithms"),
                1 => fs.pop().expect("one factor"),
                _ => N::Prod(fs),
            };
            let (k0, ts) = terms(&rest);
            if k0 != 0.0 {
                return miss(1, "sum of logarithms has a constant term");
            }
            let mut coeffs = Vec::new();
            for t in &ts {
                let (ak, u) = opt(coef_of(t, ln_arg), 2, "term is not a_k ln(b_k x)")?;
                let bk = opt(scaled_x(&u), 2, "term is not a_k ln(b_k x)")?;
                coeffs.push((k * ak, bk));
            }
            Ok(ParamSet::new().with_coeffs(coeffs))
        }
        C3 => {
            let (k, fs) = factors(n);
            if k != 1.0 || fs.len() != 1 {
                return miss(0, "expected a single power");
            }
            let N::Pow(base, ex) = &fs[0] else {
                return miss(0, "expected a power");
            };
            let (c, d) = opt(xmono(ex), 1, "exponent is not cx^d")?;
            let (a, b) = opt(xmono(base), 2, "base is not ax^b")?;
            Ok(params(&[("a", a), ("b", b), ("c", c), ("d", d)]))
        }
        C5 => {
            let (a, fs) = factors(n);
            if fs.len() != 1 {
                return miss(0, "expected a single power");
            }
            let N::Pow(base, ex) = &fs[0] else {
                return miss(0, "expected a power");
            };
            if **ex != N::Ln(Box::new(N::X)) {
                return miss(1, "exponent is not ln(x)");
            }
            let (b, p) = opt(xmono(base), 2, "base is not bx^{ln c}")?;
            Ok(params(&[("a", a), ("b", b), ("c", p.exp())]))
        }
        C6 => {
            let (a, fs) = factors(n);
            if fs.len() != 1 {
                return miss(0, "expected a single power");
            }
            let N::Pow(base, ex) = &fs[0] else {
                return miss(0, "expected a power");
            };
            if **base != N::X {
                return miss(1, "base is not x");
            }
            let (b, inner) = opt(
                coef_of(ex, |g| match g {
                    N::Tsr(u) => Some(u),
                    _ => None,
                }),
                2,
                "exponent is not b tsr(x^c)",
            )?;
            let c = opt(xpow(&inner), 3, "tsr argument is not x^c")?;
            Ok(params(&[("a", a), ("b", b), ("c", c)]))
        }
        C10 => {
            let (a, fs) = factors(n);
            if fs.len() != 1 {
                return miss(0, "expected a single power");
            }
            let N::Pow(base, ex) = &fs[0] else {
                return miss(0, "expected a power");
            };
            let N::Tsr(u) = &**base else {
                return miss(1, "base is not tsr(bx)");
            };
            let b = opt(scaled_x(u), 2, "tsr argument is not bx")?;
            let c = opt(scaled_x(ex), 3, "exponent is not cx")?;
            Ok(params(&[("a", a), ("b", b), ("c", c)]))
        }
    }
}

/// `(c, d, k)` for a factor `(c e^{-dx} + k)^{-1}`.
fn denominator_exp(g: &N) -> Option<(f64, f64, f64)> {
    let (base, p) = pow_parts(g);
    if p != -1.0 {
        return None;
    }
    let (k, ts) = terms(base);
    if ts.len() != 1 {
        return None;
    }
    let (m, u) = coef_of(&ts[0], exp_arg)?;
    let (s, u0) = linear(&u)?;
    Some((m * u0.exp(), -s, k))
}

/// Match `e` against the catalog templates in [`MATCH_ORDER`].
pub fn match_family(e: &Expr) -> Result<MatchResult> {
    if !e.has_var() {
        return Err(Error::NoMatch { nearest: Vec::new() });
    }
    let (n, trace) = normalize_n(e);
    let mut misses: Vec<(u8, FamilyId, String)> = Vec::new();
    for &family in &MATCH_ORDER {
        match match_one(family, &n) {
            Ok(params) => {
                if crate::catalog::check_params(family, &params).is_ok() {
                    return Ok(MatchResult {
                        family,
                        params,
                        normalization_trace: trace,
                    });
                }
                misses.push((9, family, "constants violate the family's constraints".into()));
            }
            Err(m) => misses.push((m.depth, family, m.why)),
        }
    }
    let best = misses.iter().map(|m| m.0).max().unwrap_or(0);
    let nearest = if best == 0 {
        Vec::new()
    } else {
        misses
            .into_iter()
            .filter(|m| m.0 == best)
            .map(|m| (m.1, m.2))
            .collect()
    };
    Err(Error::NoMatch { nearest })
}

/// The template for `family` instantiated with `p`, as an expression.
pub fn family_expr(family: FamilyId, p: &ParamSet) -> Result<Expr> {
    use FamilyId::*;
    let g = |n: &str| p.req(n);
    let text = match family {
        P1 => format!("({}*x+{})^{}*exp({}*x+{})", g("a")?, g("b")?, g("c")?, g("d")?, g("f")?),
        P2 => format!("exp({}*W(x)+{})*x^{}", g("a")?, g("b")?, g("c")?),
        P3 => format!("{}*x^{}*exp({}*x^{})+{}", g("a")?, g("b")?, g("c")?, g("d")?, g("f")?),
        P4 => format!("({}*x+{})/({}*exp(-{}*x)-{})", g("a")?, g("b")?, g("c")?, g("d")?, g("f")?),
        P5 => format!("{a}*x*coth({}*x)-{a}*x", g("b")?, a = g("a")?),
        P6 => format!("ln({}*x^{})^{}/({}*x^{})", g("a")?, g("b")?, g("c")?, g("d")?, g("f")?),
        P7 => format!("{}*x^{}*W(x)^{}", g("a")?, g("b")?, g("c")?),
        P8 => "W(x)*exp(x)".to_string(),
        P9 => "ln(x)/W(x)".to_string(),
        P10 => format!("{}*W({b}*x)/(x*(W({b}*x)+1))+{}", g("a")?, g("c")?, b = g("b")?),
        P11 => format!("ln({}*x+{})/({}*x+{})", g("a")?, g("b")?, g("c")?, g("d")?),
        S1 => format!("{}*x+{}+{}*exp({}*x)", g("a")?, g("b")?, g("c")?, g("d")?),
        S2 => format!("{}*x+{}+{}*exp(W(x))", g("a")?, g("b")?, g("c")?),
        S3 => format!("{}*(x+{})+{}*ln(x/{})", g("a")?, g("b")?, g("c")?, g("d")?),
        S4 => format!("x^{}+ln(x^{})", g("a")?, g("b")?),
        S5 => format!("ln(x^{})+W(x^{})", g("a")?, g("b")?),
        S6 => format!("W({}*x)-W({}*x)", g("a")?, g("b")?),
        S7 => "W(x)+W(1/x)".to_string(),
        S8 => format!("2*W({}*x)-W(({}*x)^2)", g("a")?, g("b")?),
        S9 => {
            if p.coeffs.is_empty() {
                return Err(crate::error::invalid("S9 needs at least one (a_k, b_k) pair"));
            }
            let sum: Vec<String> = p.coeffs.iter().map(|(a, b)| format!("{a}*ln({b}*x)")).collect();
            format!("x*({})", sum.join("+"))
        }
        C3 => format!("({}*x^{})^({}*x^{})", g("a")?, g("b")?, g("c")?, g("d")?),
        C5 => format!("{}*({}*x^ln({}))^ln(x)", g("a")?, g("b")?, g("c")?),
        C6 => format!("{}*x^({}*tsr(x^{}))", g("a")?, g("b")?, g("c")?),
        C10 => format!("{}*tsr({}*x)^({}*x)", g("a")?, g("b")?, g("c")?),
        BernoulliGen => format!("{}*x/(exp(-{}*x)-{})", g("a")?, g("b")?, g("c")?),
    };
    Ok(parse(&text)?)
}

/// Result of [`solve_text`]: the match and the solutions it led to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TextSolution {
    pub matched: MatchResult,
    pub solutions: SolutionSet,
}

/// Parse, match and invert in one step.
pub fn solve_text(text: &str, y: f64) -> Result<TextSolution> {
    let e = parse(text)?;
    let matched = match_family(&e)?;
    let solutions = invert(matched.family, &matched.params, y)?;
    Ok(TextSolution { matched, solutions })
}
