use super::{FamilyId, ParamSet};
use crate::error::{domain, invalid, Result};
use crate::lambert::{w, BranchId};
use crate::tetration::tsr;

fn w0(label: &str, z: f64) -> Result<f64> {
    w(BranchId::Principal, z).map_err(|_| domain(format!("{label} = {z} is outside [-1/e, inf)")))
}

fn ln_pos(label: &str, v: f64) -> Result<f64> {
    if !(v > 0.0) {
        return Err(domain(format!("{label} = {v} must be positive for ln")));
    }
    Ok(v.ln())
}

fn real_pow(label: &str, base: f64, p: f64) -> Result<f64> {
    let r = base.powf(p);
    if r.is_nan() {
        return Err(domain(format!("{label} = {base} raised to {p} is not real")));
    }
    Ok(r)
}

fn nonzero_den(label: &str, v: f64) -> Result<f64> {
    if v == 0.0 || !v.is_finite() {
        return Err(domain(format!("{label} = {v} is a pole")));
    }
    Ok(v)
}

fn positive_x(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain(format!("x = {x} must be positive")));
    }
    Ok(x)
}

/// Validate the family's nonzero constraints on its constants.
pub(crate) fn check_params(family: FamilyId, p: &ParamSet) -> Result<()> {
    use FamilyId::*;
    let nz = |names: &[&str]| -> Result<()> {
        for n in names {
            p.nonzero(n)?;
        }
        Ok(())
    };
    let any = |names: &[&str]| -> Result<()> {
        for n in names {
            p.req(n)?;
        }
        Ok(())
    };
    match family {
        P1 => {
            nz(&["a", "c", "d"])?;
            any(&["b", "f"])
        }
        P2 => {
            nz(&["c"])?;
            any(&["a", "b"])?;
            if p.req("a")? + p.req("c")? == 0.0 {
                return Err(invalid("P2 needs a + c != 0"));
            }
            Ok(())
        }
        P3 => {
            nz(&["a", "b", "c", "d"])?;
            any(&["f"])
        }
        P4 => {
            nz(&["a", "c", "d", "f"])?;
            any(&["b"])
        }
        P5 => nz(&["a", "b"]),
        P6 => nz(&["a", "b", "c", "d", "f"]),
        P7 => {
            nz(&["a", "b"])?;
            any(&["c"])?;
            if p.req("b")? + p.req("c")? == 0.0 {
                return Err(invalid("P7 needs b + c != 0"));
            }
            Ok(())
        }
        P8 | P9 | S7 => Ok(()),
        P10 => {
            nz(&["a", "b"])?;
            any(&["c"])
        }
        P11 => {
            nz(&["a", "c"])?;
            any(&["b", "d"])?;
            let k = p.req("d")? - p.req("c")? * p.req("b")? / p.req("a")?;
            if k == 0.0 {
                return Err(invalid("P11 needs d - cb/a != 0"));
            }
            Ok(())
        }
        S1 => {
            nz(&["a", "c", "d"])?;
            any(&["b"])
        }
        S2 => {
            nz(&["a"])?;
            any(&["b", "c"])
        }
        S3 => {
            nz(&["a", "c", "d"])?;
            any(&["b"])
        }
        S4 => nz(&["a", "b"]),
        S5 => {
            nz(&["a", "b"])?;
            if p.req("a")? + p.req("b")? == 0.0 {
                return Err(invalid("S5 needs a + b != 0"));
            }
            Ok(())
        }
        S6 => {
            nz(&["a", "b"])?;
            if p.req("a")? == p.req("b")? {
                return Err(invalid("S6 needs a != b"));
            }
            Ok(())
        }
        S8 => nz(&["a", "b"]),
        S9 => {
            if p.coeffs.is_empty() {
                return Err(invalid("S9 needs at least one (a_k, b_k) pair"));
            }
            for &(ak, bk) in &p.coeffs {
                if !ak.is_finite() || !(bk > 0.0) || !bk.is_finite() {
                    return Err(invalid(format!("S9 pair ({ak}, {bk}) needs finite a_k and b_k > 0")));
                }
            }
            let s: f64 = p.coeffs.iter().map(|c| c.0).sum();
            if s == 0.0 {
                return Err(invalid("S9 needs sum of a_k != 0"));
            }
            Ok(())
        }
        C3 => {
            nz(&["b", "c", "d"])?;
            if !(p.req("a")? > 0.0) {
                return Err(invalid("C3 needs a > 0"));
            }
            Ok(())
        }
        C5 => {
            nz(&["a"])?;
            if !(p.req("b")? > 0.0) || !(p.req("c")? > 0.0) || p.req("c")? == 1.0 {
                return Err(invalid("C5 needs b > 0 and c > 0, c != 1"));
            }
            Ok(())
        }
        C6 => nz(&["a", "b", "c"]),
        C10 => nz(&["a", "b", "c"]),
        BernoulliGen => nz(&["a", "b", "c"]),
    }
}

/// Evaluate `y = F(x; params)` for `family`, with principal W throughout.
pub fn forward(family: FamilyId, p: &ParamSet, x: f64) -> Result<f64> {
    check_params(family, p)?;
    if !x.is_finite() {
        return Err(domain(format!("x = {x} is not finite")));
    }
    let v = eval(family, p, x)?;
    if v.is_nan() {
        return Err(domain(format!("{family} is not real at x = {x}")));
    }
    Ok(v)
}

fn g(p: &ParamSet, n: &str) -> f64 {
    p.get(n).unwrap_or(f64::NAN)
}

fn eval(family: FamilyId, p: &ParamSet, x: f64) -> Result<f64> {
    use FamilyId::*;
    let (a, b, c, d, f) = (g(p, "a"), g(p, "b"), g(p, "c"), g(p, "d"), g(p, "f"));
    Ok(match family {
        P1 => {
            let base = a * x + b;
            if base == 0.0 && c < 0.0 {
                return Err(domain("ax+b = 0 with negative exponent c"));
            }
            real_pow("ax+b", base, c)? * (d * x + f).exp()
        }
        P2 => {
            let wx = w0("x", x)?;
            if x == 0.0 && c < 0.0 {
                return Err(domain("x = 0 with negative exponent c"));
            }
            (a * wx + b).exp() * real_pow("x", x, c)?
        }
        P3 => {
            positive_x(x)?;
            a * x.powf(b) * (c * x.powf(d)).exp() + f
        }
        P4 => (a * x + b) / nonzero_den("ce^{-dx}-f", c * (-d * x).exp() - f)?,
        P5 => {
            nonzero_den("x", x)?;
            // coth(t) - 1 = 2 / (e^{2t} - 1), without the cancellation.
            2.0 * a * x / (2.0 * b * x).exp_m1()
        }
        P6 => {
            positive_x(x)?;
            let l = ln_pos("ax^b", a * x.powf(b))?;
            real_pow("ln(ax^b)", l, c)? / (d * x.powf(f))
        }
        P7 => {
            let wx = w0("x", x)?;
            if x == 0.0 && (b < 0.0 || c < 0.0) {
                return Err(domain("x = 0 with a negative exponent"));
            }
            a * real_pow("x", x, b)? * real_pow("W(x)", wx, c)?
        }
        P8 => w0("x", x)? * x.exp(),
        P9 => {
            positive_x(x)?;
            x.ln() / w0("x", x)?
        }
        P10 => {
            nonzero_den("x", x)?;
            let wb = w0("bx", b * x)?;
            a * wb / (x * nonzero_den("W(bx)+1", wb + 1.0)?) + c
        }
        P11 => ln_pos("ax+b", a * x + b)? / nonzero_den("cx+d", c * x + d)?,
        S1 => a * x + b + c * (d * x).exp(),
        S2 => a * x + b + c * w0("x", x)?.exp(),
        S3 => a * (x + b) + c * ln_pos("x/d", x / d)?,
        S4 => {
            positive_x(x)?;
            x.powf(a) + b * x.ln()
        }
        S5 => {
            positive_x(x)?;
            a * x.ln() + w0("x^b", x.powf(b))?
        }
        S6 => w0("ax", a * x)? - w0("bx", b * x)?,
        S7 => {
            nonzero_den("x", x)?;
            w0("x", x)? + w0("1/x", 1.0 / x)?
        }
        S8 => {
            let bx = b * x;
            2.0 * w0("ax", a * x)? - w0("(bx)^2", bx * bx)?
        }
        S9 => {
            let mut s = 0.0;
            for &(ak, bk) in &p.coeffs {
                s += ak * ln_pos("b_k x", bk * x)?;
            }
            x * s
        }
        C3 => {
            positive_x(x)?;
            (a * x.powf(b)).powf(c * x.powf(d))
        }
        C5 => {
            positive_x(x)?;
            a * (b * x.powf(c.ln())).powf(x.ln())
        }
        C6 => {
            positive_x(x)?;
            let s = tsr(x.powf(c))?;
            a * x.powf(b * s)
        }
        C10 => a * tsr(b * x)?.powf(c * x),
        BernoulliGen => {
            // e^{-bx} - c computed as expm1(-bx) + (1 - c) keeps accuracy near x = 0 when c = 1.
            let den = (-b * x).exp_m1() + (1.0 - c);
            a * x / nonzero_den("e^{-bx}-c", den)?
        }
    })
}
