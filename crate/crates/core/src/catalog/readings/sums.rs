use std::f64::consts::SQRT_2;

use super::{pv, Candidate, Reading, Trace};
use crate::catalog::{CaseTag, ParamSet};
use crate::tetration::tnr_ln;

pub(crate) static S1: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\frac{1}{d} \ln \left( \frac{a}{dc}W \left( \frac{dc}{a}e^{ d \frac{y-b}{a}} \right) \right) = x",
    solve: s1,
}];

fn s1(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c, d) = (pv(p, "a"), pv(p, "b"), pv(p, "c"), pv(p, "d"));
    let mut out = Vec::new();
    for (br, wv) in tr.w_scaled_exp("W-arg", d * c / a, d * (y - b) / a) {
        let inner = a / (d * c) * wv;
        if inner > 0.0 {
            out.push(Candidate::new(inner.ln() / d, vec![br]));
        }
    }
    out
}

pub(crate) static S2: &[Reading] = &[Reading {
    name: "stated",
    latex: r"W \left( \frac{y-b}{a}e^{ c/a} \right)- \frac{c}{a} = W(x)",
    solve: s2,
}];

fn s2(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c) = (pv(p, "a"), pv(p, "b"), pv(p, "c"));
    let z = (y - b) / a * (c / a).exp();
    let mut out = Vec::new();
    for (br, wv) in tr.w_all("W-arg", z) {
        let u = wv - c / a;
        if u >= -1.0 {
            out.push(Candidate::new(u * u.exp(), vec![br]).mid(u));
        }
    }
    out
}

pub(crate) static S3: &[Reading] = &[
    Reading {
        name: "stated",
        latex: r"\frac{W( \frac{ad}{c}e^{ \frac{y}{c}- \frac{ab}{c}})}{a} = x",
        solve: s3_stated,
    },
    Reading {
        name: "derivation: W(...) = (a/c)x",
        latex: r"W( \frac{ad}{c}e^{ \frac{y}{c}- \frac{ab}{c}}) = \frac{a}{c}x",
        solve: s3_step,
    },
];

fn s3_core(p: &ParamSet, y: f64, tr: &mut Trace, scale: f64) -> Vec<Candidate> {
    let (a, b, c, d) = (pv(p, "a"), pv(p, "b"), pv(p, "c"), pv(p, "d"));
    tr.w_scaled_exp("W-arg", a * d / c, y / c - a * b / c)
        .into_iter()
        .map(|(br, wv)| Candidate::new(scale * wv / a, vec![br]))
        .collect()
}

fn s3_stated(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    s3_core(p, y, tr, 1.0)
}

fn s3_step(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    s3_core(p, y, tr, pv(p, "c"))
}

pub(crate) static S4: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\left[ \frac{bW(e^{ay/b})}{a} \right]^{1/a} = x",
    solve: s4,
}];

fn s4(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b) = (pv(p, "a"), pv(p, "b"));
    let z = (a * y / b).exp();
    let mut out = Vec::new();
    for (br, wv) in tr.w_all("W-arg", z) {
        let inner = b * wv / a;
        if inner > 0.0 {
            out.push(Candidate::new(inner.powf(1.0 / a), vec![br]));
        }
    }
    out
}

pub(crate) static S5: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\left[ \frac{aW(\frac{a+b}{a}e^{ by/a})}{a+b} \right]^{ \frac{1}{b}}e^{\frac{aW(\frac{a+b}{a}e^{ by/a})}{b(a+b)}} = x",
    solve: s5,
}];

fn s5(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b) = (pv(p, "a"), pv(p, "b"));
    let z = (a + b) / a * (b * y / a).exp();
    let mut out = Vec::new();
    for (br, wv) in tr.w_all("W-arg", z) {
        let u = a * wv / (a + b);
        if u > 0.0 {
            out.push(Candidate::new(u.powf(1.0 / b) * (u / b).exp(), vec![br]).mid(u));
        }
    }
    out
}

pub(crate) static S6: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\frac{y}{abe^{y}-a^{2}} \exp \left( \frac{y}{be^{y}-a} \right) = x",
    solve: s6,
}];

fn s6(p: &ParamSet, y: f64, _: &mut Trace) -> Vec<Candidate> {
    let (a, b) = (pv(p, "a"), pv(p, "b"));
    let ey = y.exp();
    vec![Candidate::new(y / (a * b * ey - a * a) * (y / (b * ey - a)).exp(), Vec::new())]
}

pub(crate) static S7: &[Reading] = &[
    Reading {
        name: "stated",
        latex: r"\frac{e^{y/2}}{ \sqrt{2}} \left[y^{2}e^{y}-2 + \sqrt{(y^{2}e^{y}-2)^{2}-4} \right]^{1/2} e^{- \sqrt{2}e^{-y/2} \left[y^{2}e^{y}-2 + \sqrt{(y^{2}e^{y}-2)^{2}-4} \right]^{-1/2}} = x; \frac{e^{-y/2}}{ \sqrt{2}} \left[y^{2}e^{y}-2 - \sqrt{(y^{2}e^{y}-2)^{2}-4} \right]^{-1/2} e^{\frac{e^{-y/2}}{ \sqrt{2}} \left[y^{2}e^{y}-2 - \sqrt{(y^{2}e^{y}-2)^{2}-4} \right]^{-1/2}} = x",
        solve: s7_stated,
    },
    Reading {
        name: "derivation: case 1 chain with both signs of the root",
        latex: r"\tfrac{1}{2} \left[y^{2}e^{y}-2 \pm \sqrt{(y^{2}e^{y}-2)^{2}-4} \right] = \left( \frac{W(x)}{W(1/x)} \right)^{ \pm 1}",
        solve: s7_both_signs,
    },
];

/// `(r + sqrt(disc), r - sqrt(disc))` with `r = y^2 e^y - 2`.
fn s7_roots(y: f64, tr: &mut Trace) -> Option<(f64, f64)> {
    let r = y * y * y.exp() - 2.0;
    let disc = r * r - 4.0;
    if !tr.need(disc >= 0.0, format!("discriminant (y^2e^y-2)^2-4 = {disc} is negative")) {
        return None;
    }
    let s = disc.sqrt();
    Some((r + s, r - s))
}

fn s7_case1(y: f64, big: f64) -> f64 {
    (y / 2.0).exp() / SQRT_2 * big.sqrt() * (-SQRT_2 * (-y / 2.0).exp() / big.sqrt()).exp()
}

fn s7_stated(_: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let Some((plus, minus)) = s7_roots(y, tr) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    if plus > 0.0 {
        out.push(Candidate::new(s7_case1(y, plus), Vec::new()).case(CaseTag::Case1));
    }
    if minus > 0.0 {
        let t = (-y / 2.0).exp() / SQRT_2 / minus.sqrt();
        out.push(Candidate::new(t * t.exp(), Vec::new()).case(CaseTag::Case2));
    }
    out
}

fn s7_both_signs(_: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let Some((plus, minus)) = s7_roots(y, tr) else {
        return Vec::new();
    };
    [(plus, CaseTag::Case1), (minus, CaseTag::Case2)]
        .into_iter()
        .filter(|(v, _)| *v > 0.0)
        .map(|(v, tag)| Candidate::new(s7_case1(y, v), Vec::new()).case(tag))
        .collect()
}

pub(crate) static S8: &[Reading] = &[Reading {
    name: "stated",
    latex: r"-\frac{a}{b^{2}}e^{-y} \left(\sqrt{1-\frac{b^{2}}{a^{2}}ye^{y}}-1 \right) e^{-\frac{a^{2}}{b^{2}}e^{-y} \left(\sqrt{1-\frac{b^{2}}{a^{2}}ye^{y}}-1 \right)} = x; \frac{a}{b^{2}}e^{-y} \left( \sqrt{1-\frac{b^{2}}{a^{2}}ye^{y}}+1 \right) e^{ \frac{a^{2}}{b^{2}}e^{-y} \left( \sqrt{1-\frac{b^{2}}{a^{2}}ye^{y}}+1 \right)} = x",
    solve: s8,
}];

fn s8(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b) = (pv(p, "a"), pv(p, "b"));
    let s = 1.0 - b * b / (a * a) * y * y.exp();
    if !tr.need(s >= 0.0, format!("1 - (b^2/a^2) y e^y = {s} is negative")) {
        return Vec::new();
    }
    let root = s.sqrt();
    let ey = (-y).exp();
    let mut out = Vec::new();
    for (m, sign, tag) in [(root - 1.0, -1.0, CaseTag::Case1), (root + 1.0, 1.0, CaseTag::Case2)] {
        // u is W(ax); the forward map uses the principal branch.
        let u = sign * a * a / (b * b) * ey * m;
        if u >= -1.0 {
            let x = sign * a / (b * b) * ey * m * u.exp();
            out.push(Candidate::new(x, Vec::new()).case(tag).mid(u));
        }
    }
    out
}

pub(crate) static S9: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\frac{ \exp \left( W \left( \frac{ \left[ \prod_{k=1}^{n}b_{k}^{a_{k}} \right]^{1/ \sum_{k=1}^{n}a_{k}}y}{ \sum_{k=1}^{n}a_{k}} \right) \right)}{\left[ \prod_{k=1}^{n}b_{k}^{a_{k}} \right]^{1/ \sum_{k=1}^{n}a_{k}}} = x",
    solve: s9,
}];

fn s9(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let u: f64 = p.coeffs.iter().map(|c| c.0).sum();
    // prod b_k^{a_k} raised to 1/u, in log space.
    let v = (p.coeffs.iter().map(|(ak, bk)| ak * bk.ln()).sum::<f64>() / u).exp();
    let z = v * y / u;
    tr.w_all("W-arg", z)
        .into_iter()
        .map(|(br, wv)| Candidate::new(wv.exp() / v, vec![br]))
        .collect()
}

pub(crate) static C3: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\frac{e^{W( \frac{a^{ d/b}d}{bc} \ln(y))/d}}{a^{ 1/b}} = x",
    solve: c3,
}];

fn c3(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c, d) = (pv(p, "a"), pv(p, "b"), pv(p, "c"), pv(p, "d"));
    if !tr.need(y > 0.0, format!("ln(y) needs y > 0, got {y}")) {
        return Vec::new();
    }
    let z = a.powf(d / b) * d / (b * c) * y.ln();
    tr.w_all("W-arg", z)
        .into_iter()
        .map(|(br, wv)| Candidate::new((wv / d).exp() / a.powf(1.0 / b), vec![br]))
        .collect()
}

pub(crate) static C5: &[Reading] = &[Reading {
    name: "stated",
    latex: r"e^{\frac{- \ln(b) \pm \sqrt{ \ln^{2}(b)-4 \ln(c)( \ln(y)- \ln(a))}}{2 \ln(c)}} = x",
    solve: c5,
}, Reading {
    name: "derivation: 0 = ln(c)ln^2(x) + ln(b)ln(x) + ln(a) - ln(y)",
    latex: r"0 = \ln(c) \ln^{2}(x)+ \ln(b) \ln(x)+ \ln(a)- \ln(y)",
    solve: c5_quadratic,
}];

fn c5(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c) = (pv(p, "a"), pv(p, "b"), pv(p, "c"));
    if !tr.need(y / a > 0.0, format!("ln(y) - ln(a) needs y/a > 0, got {}", y / a)) {
        return Vec::new();
    }
    let (lb, lc) = (b.ln(), c.ln());
    let disc = lb * lb - 4.0 * lc * (y / a).ln();
    if !tr.need(disc >= 0.0, format!("discriminant ln^2(b) - 4ln(c)(ln y - ln a) = {disc} is negative")) {
        return Vec::new();
    }
    let s = disc.sqrt();
    vec![
        Candidate::new(((-lb + s) / (2.0 * lc)).exp(), Vec::new()).case(CaseTag::Case1),
        Candidate::new(((-lb - s) / (2.0 * lc)).exp(), Vec::new()).case(CaseTag::Case2),
    ]
}

fn c5_quadratic(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c) = (pv(p, "a"), pv(p, "b"), pv(p, "c"));
    if !tr.need(y / a > 0.0, format!("ln(y) - ln(a) needs y/a > 0, got {}", y / a)) {
        return Vec::new();
    }
    let (lb, lc, ly) = (b.ln(), c.ln(), (y / a).ln());
    let disc = lb * lb + 4.0 * lc * ly;
    if !tr.need(disc >= 0.0, format!("discriminant ln^2(b) + 4ln(c)ln(y/a) = {disc} is negative")) {
        return Vec::new();
    }
    // Cancellation-free roots of lc L^2 + lb L - ly = 0, `+` root first.
    let q = -0.5 * (lb + lb.signum() * disc.sqrt());
    let roots = if q == 0.0 {
        [0.0, 0.0]
    } else if lb >= 0.0 {
        [-ly / q, q / lc]
    } else {
        [q / lc, -ly / q]
    };
    roots
        .iter()
        .zip([CaseTag::Case1, CaseTag::Case2])
        .map(|(&l, case)| Candidate::new(l.exp(), Vec::new()).case(case))
        .collect()
}

pub(crate) static C6: &[Reading] = &[
    Reading {
        name: "stated",
        latex: r"e^{ \frac{1}{c \sqrt{2}}[W(2 \ln(( \frac{y}{a})^{ \frac{c}{b}})) \ln(( \frac{y}{a})^{ \frac{c}{a}}]^{ \frac{1}{2}}} = x",
        solve: c6_stated,
    },
    Reading {
        name: "derivation: (1/2)W(2L)e^{(1/2)W(2L)} = c ln(x)",
        latex: r"\frac{1}{2}W(2 \ln(( \tfrac{y}{a})^{ c/b}))e^{\frac{1}{2}W(2 \ln(( \tfrac{y}{a})^{ c/b}))} = c \ln(x)",
        solve: c6_step,
    },
];

fn c6_logs(p: &ParamSet, y: f64, tr: &mut Trace) -> Option<f64> {
    if !tr.need(y / pv(p, "a") > 0.0, format!("ln(y/a) needs y/a > 0 at y = {y}")) {
        return None;
    }
    Some((y / pv(p, "a")).ln())
}

fn c6_stated(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c) = (pv(p, "a"), pv(p, "b"), pv(p, "c"));
    let Some(l) = c6_logs(p, y, tr) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (br, wv) in tr.w_all("W-arg", 2.0 * c / b * l) {
        let inner = wv * (c / a * l);
        if inner >= 0.0 {
            out.push(Candidate::new((inner.sqrt() / (c * SQRT_2)).exp(), vec![br]));
        }
    }
    out
}

fn c6_step(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (b, c) = (pv(p, "b"), pv(p, "c"));
    let Some(l) = c6_logs(p, y, tr) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (br, wv) in tr.w_all("W-arg", 2.0 * c / b * l) {
        let h = wv / 2.0;
        // h is W(c ln x), taken on the principal branch by the forward map.
        if h >= -1.0 {
            out.push(Candidate::new((h * h.exp() / c).exp(), vec![br]).mid(h));
        }
    }
    out
}

pub(crate) static C10: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\frac{^{2} \left( \tcr \left( \left[ \frac{y}{a} \right]^{b/c} \right) \right)}{b} = x",
    solve: c10,
}];

fn c10(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c) = (pv(p, "a"), pv(p, "b"), pv(p, "c"));
    if !tr.need(y / a > 0.0, format!("(y/a)^(b/c) needs y/a > 0 at y = {y}")) {
        return Vec::new();
    }
    match tnr_ln(b / c * (y / a).ln(), 3) {
        Ok(t) => vec![Candidate::new(t.powf(t) / b, Vec::new()).mid(t)],
        Err(e) => {
            tr.need(false, format!("tcr((y/a)^(b/c)) undefined: {e}"));
            Vec::new()
        }
    }
}
