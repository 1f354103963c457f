//! Acceptance criteria, one PASS/FAIL line each.

use std::f64::consts::{E, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};
use std::process::{Command, Output};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use wtool_core::applications::{diode_voltage, film_thickness, film_time, DiodeParams, FilmParams};
use wtool_core::catalog::{
    forward, gate_record, invert, invert_branch_difference, oracle_solve, sampling, FamilyId, GateStatus,
    ParamSet,
};
use wtool_core::identities::{
    change_of_base_identity, exp_identity, log_difference_identity, product_identity, sum_identity,
};
use wtool_core::lambert::{eval_w, residual, w, BranchId, INV_E};
use wtool_core::polar::{
    polar_points, rotate_all, rotate_exp, rotate_log, rotate_special, rotated_exp_quarter, CurveKind, RotationSpec,
};
use wtool_core::tetration::{tnr, tnr_ln, tower, tower_ln, tsr};
use wtool_core::{solve_text, Error};

type Check = Result<String, String>;
type Criterion = fn() -> Check;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn log_space(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
}

fn lin_space(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn w_defining_relation() -> Check {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let cases = [
        (BranchId::Principal, 1e10 + INV_E),
        (BranchId::Secondary, INV_E - 1e-10),
    ];
    for (br, t_hi) in cases {
        for t in log_space(1e-12, t_hi, 1000) {
            let z = -INV_E + t;
            let v = eval_w(br, z).map_err(|e| format!("{br:?} z={z}: {e}"))?.value;
            let r = residual(z, v);
            let bound = if t < 1e-6 { 1e-7 } else { 1e-12 * z.abs().max(1.0) };
            ensure(r <= bound, format!("{br:?} z={z}: residual {r:e} > {bound:e}"))?;
            worst = worst.max(r / bound);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, format!("took {secs:.3} s"))?;
    Ok(format!("2000 points, worst residual/bound {worst:.2e}, {secs:.3} s"))
}

fn anchors() -> Check {
    let w0 = |z| w(BranchId::Principal, z).map_err(|e| e.to_string());
    ensure(w0(0.0)? == 0.0, "W0(0) != 0")?;
    let d = (w0(E)? - 1.0).abs();
    ensure(d <= 1e-15, format!("|W0(e) - 1| = {d:e}"))?;
    for br in BranchId::ALL {
        let d = (w(br, -INV_E).map_err(|e| e.to_string())? + 1.0).abs();
        ensure(d <= 1e-7, format!("{br:?}: |W(-1/e) + 1| = {d:e}"))?;
    }
    Ok("W0(0) = 0, W0(e) = 1, W(-1/e) = -1 on both branches".into())
}

fn identities() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut log_u = |lo: f64, hi: f64| (rng.gen_range(lo.ln()..hi.ln())).exp();
    let mut worst: f64 = 0.0;
    let mut take = |name: &str, c: Result<wtool_core::identities::IdentityCheck, Error>| -> Result<(), String> {
        let c = c.map_err(|e| format!("{name}: {e}"))?;
        worst = worst.max(c.rel_error);
        ensure(c.rel_error <= 1e-11, format!("{name}: rel error {:e}", c.rel_error))
    };
    for i in 0..100 {
        let (z, br) = if i % 2 == 0 {
            (log_u(1e-3, 1e3), BranchId::Principal)
        } else {
            (-log_u(1e-3, INV_E - 1e-3), BranchId::Secondary)
        };
        take("exp", exp_identity(z, br))?;
        take("log-difference", log_difference_identity(log_u(1e-3, 1e6), BranchId::Principal))?;
        let n = [1.0, 2.0, 3.0][i % 3];
        take("product", product_identity(n, log_u(1e-2, 1e2), BranchId::Principal))?;
        take("sum", sum_identity(log_u(1e-2, 1e3), log_u(1e-2, 1e3)))?;
        let (a, b) = (log_u(1.5, 10.0), log_u(1.5, 10.0));
        take("change of base", change_of_base_identity(a, b, log_u(0.1, 100.0), BranchId::Principal))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, format!("took {secs:.3} s"))?;
    Ok(format!("5 x 100 samples, worst rel error {worst:.2e}, {secs:.3} s"))
}

fn catalog_round_trips() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut u = || rng.gen::<f64>();
    let (mut closed, mut fallback) = (0, 0);
    for f in FamilyId::ALL {
        let unresolved = gate_record(f).status == GateStatus::ErratumUnresolved;
        for k in 0..100 {
            let (p, x) = sampling::sample_case(f, &mut u, 100).ok_or(format!("{f}: no admissible sample"))?;
            let y = forward(f, &p, x).map_err(|e| format!("{f}: {e}"))?;
            let set = match invert(f, &p, y) {
                Ok(s) if !unresolved => {
                    closed += 1;
                    s
                }
                Err(Error::Erratum { fallback: fb, .. }) if unresolved => {
                    fallback += 1;
                    *fb
                }
                other => return Err(format!("{f} sample {k} ({p:?}, x={x}): unexpected {other:?}")),
            };
            let hit = set.xs().iter().any(|s| rel(*s, x) <= 1e-8);
            ensure(hit, format!("{f} sample {k} ({p:?}, x={x}): got {:?}", set.xs()))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, format!("took {secs:.1} s"))?;
    Ok(format!(
        "{closed} closed-form and {fallback} erratum-fallback round trips at rel 1e-8, {secs:.1} s"
    ))
}

fn wtool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wtool"))
        .args(args)
        .output()
        .expect("run wtool")
}

fn strict_json(bytes: &[u8]) -> Result<Value, String> {
    serde_json::from_slice(bytes).map_err(|e| format!("bad JSON: {e}"))
}

fn gate_report() -> Check {
    let out = wtool(&["validate"]);
    let v = strict_json(&out.stdout)?;
    let recs = v["records"].as_array().ok_or("no records")?;
    for f in FamilyId::ALL {
        let n = recs.iter().filter(|r| r["id"] == f.name()).count();
        ensure(n == 1, format!("{f}: {n} verdicts"))?;
    }
    let mut seen = Vec::new();
    for id in ["P5", "S6", "P6", "P4", "EXA2"] {
        let r = recs.iter().find(|r| r["id"] == id).ok_or(format!("{id} missing"))?;
        let status = r["status"].as_str().unwrap_or("");
        match status {
            "PASS" => {}
            "ERRATUM_UNRESOLVED" => ensure(
                r["notes"].as_str().is_some_and(|s| !s.is_empty()),
                format!("{id}: erratum without notes"),
            )?,
            other => return Err(format!("{id}: status {other:?}")),
        }
        seen.push(format!("{id}={status}"));
    }
    Ok(seen.join(" "))
}

fn dual_case() -> Check {
    let mut checked = 0;
    let ab = ParamSet::from_pairs(&[("a", 1.0), ("b", 1.0)]).unwrap();
    for (f, p) in [(FamilyId::S7, ParamSet::new()), (FamilyId::S8, ab)] {
        let mut two = 0;
        for x in lin_space(0.05, 10.0, 50) {
            let Ok(y) = forward(f, &p, x) else { continue };
            let oracle = oracle_solve(f, &p, y);
            if oracle.len() != 2 {
                continue;
            }
            two += 1;
            let got = invert(f, &p, y).map_err(|e| format!("{f} y={y}: {e}"))?;
            ensure(got.len() == 2, format!("{f} y={y}: {} solutions", got.len()))?;
            for (a, b) in got.xs().iter().zip(oracle.xs()) {
                ensure(rel(*a, b) <= 1e-7, format!("{f} y={y}: {a} vs oracle {b}"))?;
            }
        }
        ensure(two >= 20, format!("{f}: only {two} two-to-one grid points"))?;
        checked += two;
    }
    Ok(format!("{checked} two-to-one y values across S7 and S8"))
}

fn bernoulli(x: f64) -> f64 {
    x / (-x).exp_m1()
}

fn branch_difference() -> Check {
    // Inverse of x/(e^{-x}-1): W_k(y e^y) - y with the branch that does not
    // return y itself (W0 for y < -1, W-1 for -1 < y < 0).
    let mut w0_only = 0;
    for y in lin_space(-10.0, -1e-3, 100) {
        let other = if y < -1.0 { BranchId::Principal } else { BranchId::Secondary };
        let x = w(other, y * y.exp()).map_err(|e| e.to_string())? - y;
        let back = bernoulli(x);
        ensure(rel(back, y) <= 1e-9, format!("y={y}: f(x)={back}"))?;
        if other == BranchId::Principal {
            w0_only += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut n = 0;
    while n < 100 {
        let p = ParamSet::from_pairs(&[
            ("a", rng.gen_range(0.5..2.0)),
            ("b", rng.gen_range(0.5..2.0)),
            ("c", rng.gen_range(0.5..2.0)),
        ])
        .unwrap();
        let x = rng.gen_range(-10.0..10.0);
        let Ok(y) = forward(FamilyId::BernoulliGen, &p, x) else { continue };
        if !y.is_finite() {
            continue;
        }
        let set = invert_branch_difference(FamilyId::BernoulliGen, &p, y)
            .map_err(|e| format!("general ({p:?}, x={x}): {e}"))?;
        let hit = set.xs().iter().any(|s| rel(*s, x) <= 1e-9);
        ensure(hit, format!("general ({p:?}, x={x}): got {:?}", set.xs()))?;
        for s in &set.solutions {
            let back = forward(FamilyId::BernoulliGen, &p, s.x).map_err(|e| e.to_string())?;
            ensure(rel(back, y) <= 1e-9, format!("general ({p:?}): f({}) = {back} vs {y}", s.x))?;
        }
        n += 1;
    }
    Ok(format!(
        "100 base points ({w0_only} via W0, the rest via W-1), 100 generalized round trips"
    ))
}

fn tetration() -> Check {
    for x in lin_space(1.0, 5.0, 200) {
        let s = tsr(x.powf(x)).map_err(|e| e.to_string())?;
        ensure(rel(s, x) <= 1e-11, format!("tsr(x^x) at x={x}: {s}"))?;
    }
    let mut via_log = 0;
    for b in lin_space(1.0, 3.0, 101) {
        for n in 1..=4 {
            let back = match tower(b, n) {
                Ok(t) => tnr(t, n),
                Err(_) => {
                    via_log += 1;
                    tower_ln(b, n).and_then(|l| tnr_ln(l, n))
                }
            }
            .map_err(|e| format!("b={b} n={n}: {e}"))?;
            ensure(rel(back, b) <= 1e-9, format!("tnr(tower({b}, {n})) = {back}"))?;
        }
    }
    ensure(tower(2.0, 3) == Ok(16.0), "tower(2, 3) != 16")?;
    Ok(format!("tsr on 200 points, tnr on 404 ({via_log} overflowing towers in log space), tower(2,3) = 16"))
}

fn polar_fidelity() -> Check {
    let mut worst: f64 = 0.0;
    for kind in CurveKind::ALL {
        let pts = polar_points(kind, 200);
        ensure(pts.len() >= 200, format!("{kind:?}: {} points", pts.len()))?;
        for (theta, r) in pts {
            let res = kind.residual(r.r * theta.cos(), r.r * theta.sin());
            ensure(res <= 1e-9, format!("{kind:?} theta={theta}: residual {res:e}"))?;
            worst = worst.max(res);
        }
    }
    Ok(format!("4 curves x 200 angles, worst residual {worst:.2e}"))
}

type RotFn = fn(&RotationSpec, f64, BranchId) -> Result<f64, Error>;

/// Hausdorff distance between the rotated sample of the original curve and
/// the rotated graph over both branches, taken at the same abscissae.
fn rotation_hausdorff(f: RotFn, spec: &RotationSpec, original: &[(f64, f64)], on_curve: impl Fn(f64, f64) -> f64) -> f64 {
    let mut worst: f64 = 0.0;
    for &(u, v) in original {
        let (x, y) = spec.rotate_point(u, v);
        let d = rotate_all(f, spec, x)
            .iter()
            .map(|(_, gy)| (gy - y).abs())
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(d);
        // Every graph point at this abscissa must map back onto the curve.
        for (_, gy) in rotate_all(f, spec, x) {
            let back = RotationSpec { phi: -spec.phi, ..*spec };
            let (bu, bv) = back.rotate_point(x, gy);
            worst = worst.max(on_curve(bu, bv));
        }
    }
    worst
}

fn rotation_fidelity() -> Check {
    let mut worst: f64 = 0.0;
    for (a, b) in [(1.0, 1.0), (2.0, 0.5)] {
        for phi in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
            let spec = RotationSpec::new(a, b, phi).map_err(|e| e.to_string())?;
            let exp_pts: Vec<(f64, f64)> = lin_space(-3.0, 3.0, 601).map(|x| (x, a * (b * x).exp())).collect();
            // Distance to the exp curve, measured along the nearer axis.
            let exp_gap = |u: f64, v: f64| {
                let dv = (v - a * (b * u).exp()).abs();
                let du = if v > 0.0 { (u - (v / a).ln() / b).abs() } else { f64::INFINITY };
                dv.min(du)
            };
            let d = rotation_hausdorff(rotate_exp, &spec, &exp_pts, exp_gap);
            ensure(d <= 1e-7, format!("CTP1 A={a} B={b} phi={phi}: {d:e}"))?;
            worst = worst.max(d);
            let log_pts: Vec<(f64, f64)> = lin_space(0.05, 3.0, 601).map(|x| (x, (x / a).ln() / b)).collect();
            let log_gap = |u: f64, v: f64| {
                let du = (u - a * (b * v).exp()).abs();
                let dv = if u > 0.0 { (v - (u / a).ln() / b).abs() } else { f64::INFINITY };
                du.min(dv)
            };
            let d = rotation_hausdorff(rotate_log, &spec, &log_pts, log_gap);
            ensure(d <= 1e-7, format!("CTP2 A={a} B={b} phi={phi}: {d:e}"))?;
            worst = worst.max(d);
        }
    }
    let spec = RotationSpec::new(1.0, 1.0, FRAC_PI_4).unwrap();
    let mut agree = 0;
    for x in lin_space(-3.0, 3.0, 601) {
        for br in BranchId::ALL {
            if let (Ok(g), Ok(s)) = (rotate_exp(&spec, x, br), rotated_exp_quarter(x, br)) {
                ensure(rel(s, g) <= 1e-10 || (s - g).abs() <= 1e-10, format!("pi/4 form at x={x}: {s} vs {g}"))?;
                agree += 1;
            }
        }
    }
    let q = rotate_special(CurveKind::Exp, 1).map_err(|e| e.to_string())?;
    ensure(q.formula == "y = -ln(x)", format!("quarter turn gives {}", q.formula))?;
    for t in lin_space(-3.0, 3.0, 61) {
        let (x, y) = q.rotate_point(t, t.exp());
        let g = q.eval(x).map_err(|e| e.to_string())?;
        ensure((g - y).abs() <= 1e-12, format!("quarter turn at t={t}"))?;
    }
    Ok(format!(
        "12 (curve, A, B, phi) cases, worst Hausdorff {worst:.2e}; pi/4 form agrees at {agree} points; quarter turn y = -ln(x)"
    ))
}

fn applications() -> Check {
    let mut worst: f64 = 0.0;
    for t in lin_space(250.0, 350.0, 5) {
        let p = DiodeParams::new(1e-9, 1e-3, 0.1, 1e6, 1.5, t).map_err(|e| e.to_string())?;
        for i in lin_space(-5e-4, 5e-3, 5) {
            let v = diode_voltage(&p, i).map_err(|e| e.to_string())?;
            let r = (p.model_current(v, i) - i).abs();
            ensure(r <= 1e-9, format!("diode T={t} I={i}: residual {r:e}"))?;
            worst = worst.max(r);
        }
    }
    // a^2 t / b^2 stays below 9 on [0, 100], so D(t) stays distinguishable from b/a in f64.
    let p = FilmParams::new(0.3, 1.0).map_err(|e| e.to_string())?;
    let mut film_worst: f64 = 0.0;
    for t in lin_space(0.0, 100.0, 401) {
        let d = film_thickness(&p, t, BranchId::Principal).map_err(|e| e.to_string())?;
        let back = film_time(&p, d).map_err(|e| format!("film t={t}: {e}"))?;
        let err = (back - t).abs() / t.max(1e-300);
        if t > 0.0 {
            ensure(err <= 1e-9, format!("film t={t}: back {back}"))?;
            film_worst = film_worst.max(err);
        } else {
            ensure(back.abs() <= 1e-9, format!("film t=0: back {back}"))?;
        }
    }
    let d0 = film_thickness(&p, 0.0, BranchId::Principal).map_err(|e| e.to_string())?;
    ensure(d0.abs() <= 1e-7, format!("D(0) = {d0}"))?;
    let dinf = film_thickness(&p, 1e9, BranchId::Principal).map_err(|e| e.to_string())?;
    ensure(dinf == p.limit(), format!("D(inf) = {dinf}"))?;
    Ok(format!(
        "diode worst residual {worst:.2e} A on 25 points; film (a=0.3, b=1) worst rel {film_worst:.2e}; D(0) = {d0:.1e}, D(inf) = b/a"
    ))
}

fn csv_strict(bytes: &[u8], header: &[&str]) -> Result<usize, String> {
    let mut rd = csv::ReaderBuilder::new().flexible(false).from_reader(bytes);
    let h = rd.headers().map_err(|e| e.to_string())?;
    ensure(h.iter().eq(header.iter().copied()), format!("header {h:?}"))?;
    let mut n = 0;
    for rec in rd.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        for (i, field) in rec.iter().enumerate() {
            let ok = if i == 2 {
                field.is_empty() || field == "0" || field == "-1"
            } else {
                field.parse::<f64>().is_ok()
            };
            ensure(ok, format!("bad field {field:?}"))?;
        }
        n += 1;
    }
    Ok(n)
}

fn parser_cli() -> Check {
    let s = solve_text("y = x*exp(x)", E).map_err(|e| e.to_string())?;
    ensure(s.solutions.xs() == [1.0], format!("x e^x = e: {:?}", s.solutions.xs()))?;
    let s = solve_text("y = x + exp(x)", 1.0).map_err(|e| e.to_string())?;
    ensure(s.solutions.xs() == [0.0], format!("x + e^x = 1: {:?}", s.solutions.xs()))?;
    let y = forward(FamilyId::P9, &ParamSet::new(), 5.0).map_err(|e| e.to_string())?;
    let s = solve_text("y = ln(x)/W(x)", y).map_err(|e| e.to_string())?;
    ensure(s.solutions.contains_close(5.0, 1e-12), format!("P9: {:?}", s.solutions.xs()))?;

    for bad in ["y = x^", "y = (x", "y = 2**x", "y = x $ 1"] {
        let o = wtool(&["solve", "--equation", bad, "--y", "1"]);
        ensure(o.status.code() == Some(2), format!("{bad:?} exited {:?}", o.status.code()))?;
        strict_json(&o.stderr)?;
    }

    let o = wtool(&["validate"]);
    let v = strict_json(&o.stdout)?;
    let any = v["records"]
        .as_array()
        .ok_or("no records")?
        .iter()
        .any(|r| r["status"] == "ERRATUM_UNRESOLVED" && r["id"].as_str().is_some_and(|id| id.parse::<FamilyId>().is_ok()));
    let want = if any { 5 } else { 0 };
    ensure(o.status.code() == Some(want), format!("validate exited {:?}, unresolved = {any}", o.status.code()))?;
    ensure(v["families_unresolved"] == any, "families_unresolved flag disagrees with records")?;

    for args in [
        &["w", "--branch", "-1", "--z", "-0.2"][..],
        &["solve", "--equation", "W(x)+W(1/x)", "--y", "1.2043392132629213"],
        &["invert", "--family", "S8", "--params", "a=1,b=1", "--y", "0.3"],
    ] {
        let o = wtool(args);
        ensure(o.status.code() == Some(0), format!("{args:?} exited {:?}", o.status.code()))?;
        strict_json(&o.stdout)?;
    }
    let o = wtool(&["polar", "--curve", "log", "--theta-min", "-1", "--theta-max", "0.35", "--steps", "50"]);
    let np = csv_strict(&o.stdout, &["theta", "r", "branch"])?;
    let o = wtool(&[
        "rotate", "--curve", "log", "--A", "2", "--B", "0.5", "--phi", "0.5", "--x-min", "-3", "--x-max", "3",
        "--steps", "50",
    ]);
    let nr = csv_strict(&o.stdout, &["x", "y", "branch"])?;
    ensure(np > 0 && nr > 0, "empty CSV")?;
    Ok(format!("3 solve_text examples, 4 malformed inputs exit 2, validate exit {want}, strict JSON/CSV ({np} + {nr} rows)"))
}

fn main() {
    let criteria: [(&str, Criterion); 12] = [
        ("W defining relation", w_defining_relation),
        ("anchor values", anchors),
        ("identity suite", identities),
        ("catalog round trips", catalog_round_trips),
        ("erratum gate report", gate_report),
        ("dual-case completeness", dual_case),
        ("branch-difference inverse", branch_difference),
        ("tetration", tetration),
        ("polar fidelity", polar_fidelity),
        ("rotation fidelity", rotation_fidelity),
        ("applications", applications),
        ("parser and CLI", parser_cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
