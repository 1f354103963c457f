use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wtool_core::catalog::{forward, FamilyId};
use wtool_core::expr::{family_expr, match_family, normalize, parse, render, solve_text, Expr, MATCH_ORDER};
use wtool_core::Error;

const CORPUS: &[&str] = &[
    "y = x*exp(2*x)",
    "y = (3*x+1)^2*exp(x+5)",
    "x + 0 + 1*exp(1*x)",
    "-x^2",
    "x^2^3",
    "x^-1.5",
    "2.5e-3*x - 4/x",
    "ln(x)/W(x)",
    "W(2*x)-W(0.5*x)",
    "0.5*x*coth(2*x)-0.5*x",
    "1.5*tsr(2*x)^(3*x)",
    "e^(pi*x)",
    "-(-x)",
    "(x)",
    "sin(x)+1",
];

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

#[test]
fn render_reparses_identically() {
    for t in CORPUS {
        let e = parse(t).unwrap();
        let again = parse(&render(&e)).unwrap();
        assert_eq!(e, again, "{t}");
    }
}

#[test]
fn match_examples() {
    let m = match_family(&parse("x*exp(2*x)").unwrap()).unwrap();
    assert_eq!(m.family, FamilyId::P1);
    let p = m.params;
    assert_eq!((p.a, p.b, p.c, p.d, p.f), (Some(1.0), Some(0.0), Some(1.0), Some(2.0), Some(0.0)));

    let m = match_family(&parse("x + 0 + 1*exp(1*x)").unwrap()).unwrap();
    assert_eq!(m.family, FamilyId::S1);
    let p = m.params;
    assert_eq!((p.a, p.b, p.c, p.d), (Some(1.0), Some(0.0), Some(1.0), Some(1.0)));
    assert!(m.normalization_trace.iter().any(|s| s == "constant folding"));

    match match_family(&parse("sin(x)").unwrap()) {
        Err(Error::NoMatch { nearest }) => assert!(nearest.is_empty()),
        other => panic!("expected NoMatch, got {other:?}"),
    }
}

#[test]
fn rewrites_feed_matching() {
    // ln(x^3) only matches S4's ln term through the listed rewrite.
    let m = match_family(&parse("x^2 + ln(x^3)").unwrap()).unwrap();
    assert_eq!(m.family, FamilyId::S4);
    assert_eq!((m.params.a, m.params.b), (Some(2.0), Some(3.0)));
    let m = match_family(&parse("e^x*x").unwrap()).unwrap();
    assert_eq!(m.family, FamilyId::P1);
    assert!(m.normalization_trace.iter().any(|s| s == "e^u -> exp(u)"));
}

#[test]
fn bernoulli_before_its_specialisation() {
    let m = match_family(&parse("x/(exp(-x)-1)").unwrap()).unwrap();
    assert_eq!(m.family, FamilyId::BernoulliGen);
    let i = |f| MATCH_ORDER.iter().position(|g| *g == f).unwrap();
    assert!(i(FamilyId::BernoulliGen) < i(FamilyId::P4));
}

#[test]
fn templates_match_back_soundly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for f in FamilyId::ALL {
        let p = f.spec().canonical_params();
        let e = family_expr(f, &p).unwrap();
        let m = match_family(&e).unwrap_or_else(|err| panic!("{f}: {err}"));
        assert_eq!(m.family, f, "{f} matched as {}", m.family);
        // Deterministic on repeat.
        assert_eq!(match_family(&e).unwrap(), m);
        let mut checked = 0;
        for _ in 0..200 {
            if checked == 20 {
                break;
            }
            let x: f64 = rng.gen_range(0.05..3.0);
            let (Ok(fw), direct) = (forward(m.family, &m.params, x), e.eval(x)) else {
                continue;
            };
            if !fw.is_finite() || !direct.is_finite() {
                continue;
            }
            assert!(close(fw, direct, 1e-12), "{f} x={x}: {fw} vs {direct}");
            checked += 1;
        }
        assert_eq!(checked, 20, "{f}: too few evaluable points");
    }
}

// Structural equality with constants compared to 1e-12 relative, since
// absorbed coefficients pick up rounding.
fn same_shape(a: &Expr, b: &Expr) -> bool {
    use Expr::*;
    match (a, b) {
        (Const(u), Const(v)) => close(*u, *v, 1e-12),
        (Var, Var) => true,
        (Add(a1, a2), Add(b1, b2))
        | (Sub(a1, a2), Sub(b1, b2))
        | (Mul(a1, a2), Mul(b1, b2))
        | (Div(a1, a2), Div(b1, b2))
        | (Pow(a1, a2), Pow(b1, b2)) => same_shape(a1, b1) && same_shape(a2, b2),
        (Neg(u), Neg(v))
        | (Exp(u), Exp(v))
        | (Ln(u), Ln(v))
        | (W(u), W(v))
        | (Coth(u), Coth(v))
        | (Tsr(u), Tsr(v)) => same_shape(u, v),
        (Func(s, u), Func(t, v)) => s == t && same_shape(u, v),
        _ => false,
    }
}

#[test]
fn rerendered_match_is_structurally_equal() {
    for f in FamilyId::ALL {
        let p = f.spec().canonical_params();
        let e = family_expr(f, &p).unwrap();
        let m = match_family(&e).unwrap();
        let back = family_expr(m.family, &m.params).unwrap();
        let (l, r) = (normalize(&back).expr, normalize(&e).expr);
        assert!(same_shape(&l, &r), "{f}: {l:?} vs {r:?}");
    }
}

#[test]
fn solve_text_examples() {
    let s = solve_text("y = x*exp(x)", std::f64::consts::E).unwrap();
    assert_eq!(s.solutions.xs().len(), 1);
    assert!((s.solutions.xs()[0] - 1.0).abs() < 1e-15);

    let s = solve_text("y = x + exp(x)", 1.0).unwrap();
    assert_eq!(s.matched.family, FamilyId::S1);
    assert!(s.solutions.xs()[0].abs() < 1e-15);

    let y = forward(FamilyId::P9, &Default::default(), 5.0).unwrap();
    let s = solve_text("y = ln(x)/W(x)", y).unwrap();
    assert!(s.solutions.contains_close(5.0, 1e-12));

    assert!(matches!(solve_text("y = x^", 1.0), Err(Error::Parse(p)) if p.position == 7));
    assert!(matches!(solve_text("sin(x)", 1.0), Err(Error::NoMatch { .. })));
    assert!(matches!(solve_text("x*exp(x)", -1.0), Err(Error::Domain(_))));
}

#[test]
fn eval_is_nan_outside_reals() {
    let e: Expr = parse("ln(x) + W(x)").unwrap();
    assert!(e.eval(-1.0).is_nan());
    assert!(parse("sin(x)").unwrap().eval(1.0).is_nan());
}
