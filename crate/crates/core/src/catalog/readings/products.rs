use std::f64::consts::E;

use super::{branch_difference, is_int, pv, real_roots, Candidate, Reading, Trace};
use crate::catalog::ParamSet;
use crate::lambert::BranchId;
use crate::tetration::tnr_ln;

pub(crate) static P1: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\frac{c}{d}W \left( \frac{d}{ac}y^{\frac{1}{c}}e^{\frac{db}{ac}-\frac{f}{c}} \right) - \frac{b}{a} = x",
    solve: p1,
}];

fn p1(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c, d, f) = (pv(p, "a"), pv(p, "b"), pv(p, "c"), pv(p, "d"), pv(p, "f"));
    if y < 0.0 {
        let k = c * d / a;
        let parity = if !is_int(k) {
            "not an integer".to_string()
        } else if (k / 2.0).fract() == 0.0 {
            "an even integer".to_string()
        } else {
            "an odd integer".to_string()
        };
        tr.note(format!("y < 0: cd/a = {k} is {parity}"));
    }
    let mut out = Vec::new();
    for r in real_roots(y, c, tr) {
        let z = d / (a * c) * r * (d * b / (a * c) - f / c).exp();
        for (br, wv) in tr.w_all("W-arg", z) {
            out.push(Candidate::new(c / d * wv - b / a, vec![br]));
        }
    }
    out
}

pub(crate) static P2: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\frac{c}{a+c}W \left(\frac{[a+c]y^{ 1/c}}{ce^{ b/c}} \right)e^{ \frac{c}{a+c}W \left( \frac{[a+c]y^{ 1/c}}{ce^{ b/c}} \right)} = x",
    solve: p2,
}];

fn p2(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c) = (pv(p, "a"), pv(p, "b"), pv(p, "c"));
    let mut out = Vec::new();
    for r in real_roots(y, c, tr) {
        let z = (a + c) * r / (c * (b / c).exp());
        for (br, wv) in tr.w_all("W-arg", z) {
            let u = c / (a + c) * wv;
            // u is W(x) in the forward map, so it must be a principal value.
            if u >= -1.0 {
                out.push(Candidate::new(u * u.exp(), vec![br]).mid(u));
            }
        }
    }
    out
}

pub(crate) static P3: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\left[ \frac{bW( \frac{cd(y-f)^{d/b}}{ba^{d/b}})}{cd} \right]^{ \frac{1}{d}} = x",
    solve: p3,
}];

fn p3(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c, d, f) = (pv(p, "a"), pv(p, "b"), pv(p, "c"), pv(p, "d"), pv(p, "f"));
    let base = ((y - f) / a).powf(d / b);
    if !tr.need(base.is_finite(), format!("((y-f)/a)^(d/b) is not real at y = {y}")) {
        return Vec::new();
    }
    let z = c * d * base / b;
    let mut out = Vec::new();
    for (br, wv) in tr.w_all("W-arg", z) {
        let inner = b * wv / (c * d);
        if inner > 0.0 {
            out.push(Candidate::new(inner.powf(1.0 / d), vec![br]));
        }
    }
    out
}

pub(crate) static P4: &[Reading] = &[Reading {
    name: "stated",
    latex: r"f \left( \frac{W_{0}(\frac{cde^{bd/a}xe^{dfx/a}}{a})-W_{-1}(\frac{dfxe^{dfx/a}}{a})}{d} -bd/a \right) = x",
    solve: p4,
}];

fn p4(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c, d, f) = (pv(p, "a"), pv(p, "b"), pv(p, "c"), pv(p, "d"), pv(p, "f"));
    let g = d * f * y / a;
    let q = g * g.exp();
    let z = c * d * (b * d / a).exp() * y * g.exp() / a;
    branch_difference(tr, z, g, q, |w0, w1| (w0 - w1) / d - b * d / a)
}

pub(crate) static P5: &[Reading] = &[Reading {
    name: "stated",
    latex: r"f \left( \frac{W_{0}( \frac{-b}{a}xe^{\frac{-b}{a}})-W_{-1}(\frac{-b}{a}xe^{\frac{-b}{a}})}{2b} \right) = x",
    solve: p5,
}];

fn p5(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b) = (pv(p, "a"), pv(p, "b"));
    let s = -b / a * y * (-b / a).exp();
    // Both terms share one argument; the returning one targets -by/a.
    let k = BranchId::for_value(-b * y / a);
    let j = k.other();
    let (Some(wj), Some(wk)) = (tr.w_on("W-arg", s, j), tr.w_on("returning W-arg", s, k)) else {
        return Vec::new();
    };
    vec![Candidate::new((wj - wk) / (2.0 * b), vec![j, k])]
}

pub(crate) static P6: &[Reading] = &[
    Reading {
        name: "stated",
        latex: r"e^{W \left( \frac{-f[a^{-f/b}dy]^{1/c}}{a^{1/b}bc} \right)} = x",
        solve: p6_stated,
    },
    Reading {
        name: "derivation: e^{W(...)} = a^{1/b}x",
        latex: r"e^{W(\frac{-f(a^{- \frac{f}{b}}dy)^{ \frac{1}{c}}}{bc})} = a^{ \frac{1}{b}}x",
        solve: p6_step,
    },
];

fn p6_core(p: &ParamSet, y: f64, tr: &mut Trace, scale_inside: bool) -> Vec<Candidate> {
    let (a, b, c, d, f) = (pv(p, "a"), pv(p, "b"), pv(p, "c"), pv(p, "d"), pv(p, "f"));
    let root = (a.powf(-f / b) * d * y).powf(1.0 / c);
    if !tr.need(root.is_finite(), format!("(a^(-f/b) d y)^(1/c) is not real at y = {y}")) {
        return Vec::new();
    }
    let a_b = a.powf(1.0 / b);
    let mut z = -f * root / (b * c);
    if scale_inside {
        z /= a_b;
    }
    tr.w_all("W-arg", z)
        .into_iter()
        .map(|(br, wv)| {
            let x = if scale_inside { wv.exp() } else { wv.exp() / a_b };
            Candidate::new(x, vec![br])
        })
        .collect()
}

fn p6_stated(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    p6_core(p, y, tr, true)
}

fn p6_step(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    p6_core(p, y, tr, false)
}

pub(crate) static P7: &[Reading] = &[
    Reading {
        name: "stated",
        latex: r"( \tfrac{b+c}{b})^{1- \frac{b+c}{b}}W \left( \frac{b}{b+c} \left[ \frac{y}{a} \right]^{ \frac{1}{b+c}} \right)^{1- \frac{b+c}{b}} = x",
        solve: p7_stated,
    },
    Reading {
        name: "derivation: general form ax^bW(cx^d)^f at c = d = 1",
        latex: r"\left[ \tfrac{df+b}{bc}W \left( \tfrac{bc}{df+b} \left[ \frac{y}{a} \right]^{\frac{d}{df+b}} \right) \right]^{\frac{1}{d}} \left[ \exp \left( \tfrac{df+b}{b}W \left( \tfrac{bc}{df+b} \left[ \frac{y}{a} \right]^{\frac{d}{df+b}} \right) \right) \right]^{\frac{1}{d}} = x",
        solve: p7_general,
    },
];

fn p7_arg(p: &ParamSet, y: f64, tr: &mut Trace) -> Option<(f64, f64, f64)> {
    let (a, b, c) = (pv(p, "a"), pv(p, "b"), pv(p, "c"));
    let m = b + c;
    let base = (y / a).powf(1.0 / m);
    if !tr.need(base.is_finite(), format!("(y/a)^(1/(b+c)) is not real at y = {y}")) {
        return None;
    }
    Some((b, m, b / m * base))
}

fn p7_stated(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let Some((b, m, z)) = p7_arg(p, y, tr) else {
        return Vec::new();
    };
    let k = m / b;
    tr.w_all("W-arg", z)
        .into_iter()
        .map(|(br, wv)| Candidate::new(k.powf(1.0 - k) * wv.powf(1.0 - k), vec![br]))
        .collect()
}

fn p7_general(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let Some((b, m, z)) = p7_arg(p, y, tr) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (br, wv) in tr.w_all("W-arg", z) {
        let u = m / b * wv;
        if u >= -1.0 {
            out.push(Candidate::new(u * u.exp(), vec![br]).mid(u));
        }
    }
    out
}

pub(crate) static P8: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\ln(^{2} \tcr(e^{y})) = x",
    solve: p8,
}];

fn p8(_: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    // ln(t^t) = t ln t with t = tcr(e^y), found from ln(e^y) = y directly.
    match tnr_ln(y, 3) {
        Ok(t) => vec![Candidate::new(t * t.ln(), Vec::new()).mid(t)],
        Err(e) => {
            tr.need(false, format!("tcr(e^y) undefined: {e}"));
            Vec::new()
        }
    }
}

pub(crate) static P9: &[Reading] = &[
    Reading {
        name: "stated",
        latex: r"\left[ \frac{1-y}{W(1-y)} \right]^{ \frac{y}{y-1}} = x",
        solve: p9_stated,
    },
    Reading {
        name: "derivation: e^{-W(1-y)}e^{e^{-W(1-y)}} = x",
        latex: r"e^{-W(1-y)}e^{e^{-W(1-y)}} = x",
        solve: p9_step,
    },
];

fn p9_stated(_: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let z = 1.0 - y;
    tr.w_all("W-arg", z)
        .into_iter()
        .filter(|(_, wv)| *wv != 0.0)
        .map(|(br, wv)| Candidate::new((z / wv).powf(y / (y - 1.0)), vec![br]))
        .collect()
}

fn p9_step(_: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    tr.w_all("W-arg", 1.0 - y)
        .into_iter()
        .map(|(br, wv)| {
            let u = (-wv).exp();
            Candidate::new(u * u.exp(), vec![br]).mid(u)
        })
        .collect()
}

pub(crate) static P10: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\frac{ \left[1- \frac{1}{W( \frac{eab}{y-c})} \right] \frac{eab}{y-c}}{eb} = x",
    solve: p10,
}];

fn p10(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c) = (pv(p, "a"), pv(p, "b"), pv(p, "c"));
    if !tr.need(y != c, "y = c has no preimage") {
        return Vec::new();
    }
    let z = E * a * b / (y - c);
    let mut out = Vec::new();
    for (br, wv) in tr.w_all("W-arg", z) {
        // W(bx) = wv - 1 must itself be a principal value.
        if wv > 0.0 {
            out.push(Candidate::new((1.0 - 1.0 / wv) * z / (E * b), vec![br]).mid(wv - 1.0));
        }
    }
    out
}

pub(crate) static P11: &[Reading] = &[Reading {
    name: "stated",
    latex: r"f \left( \frac{e^{W((d-cb/a)xe^{(d-cb/a)x})-W(- \frac{c(d-cb/a)^{2}xe^{(d-cb/a)x}}{a})}-b}{a} \right) = x",
    solve: p11,
}];

fn p11(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c, d) = (pv(p, "a"), pv(p, "b"), pv(p, "c"), pv(p, "d"));
    let k = d - c * b / a;
    let g = k * y;
    let first = g * g.exp();
    let second = -c * k * k * y * g.exp() / a;
    branch_difference(tr, second, g, first, |w_second, w_first| {
        ((w_first - w_second).exp() - b) / a
    })
}

pub(crate) static BERNOULLI: &[Reading] = &[Reading {
    name: "stated",
    latex: r"\frac{W_{0}(\frac{bx}{a}e^{bcx/a})-W_{-1}(\frac{bcx}{a}e^{bcx/a})}{b} = x",
    solve: bernoulli,
}];

fn bernoulli(p: &ParamSet, y: f64, tr: &mut Trace) -> Vec<Candidate> {
    let (a, b, c) = (pv(p, "a"), pv(p, "b"), pv(p, "c"));
    let g = b * c * y / a;
    let q = g * g.exp();
    let z = b * y / a * g.exp();
    branch_difference(tr, z, g, q, |w_free, w_ret| (w_free - w_ret) / b)
}
