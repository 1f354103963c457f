use std::f64::consts::FRAC_PI_2;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Number, Value};

use wtool_core::catalog::{provenance_table, SolutionSet, SolutionSource};
use wtool_core::polar::{polar_radius, rotate_all, rotate_exp, rotate_log, rotate_special};
use wtool_core::{eval_w, eval_w_base, invert, match_family, parse, BranchId, CurveKind, Error, FamilyId, ParamSet, RotationSpec};

#[derive(Parser)]
#[command(name = "wtool", version, about = "Lambert W evaluation and closed-form equation solving")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate W on one branch, optionally in another base.
    #[command(allow_negative_numbers = true)]
    W {
        #[arg(long)]
        branch: i32,
        #[arg(long)]
        z: f64,
        #[arg(long)]
        base: Option<f64>,
    },
    /// Parse an equation, match it to a family and solve for x.
    #[command(allow_negative_numbers = true)]
    Solve {
        #[arg(long)]
        equation: String,
        #[arg(long)]
        y: f64,
    },
    /// Invert a family directly, e.g. `--family P1 --params a=1,b=0,c=1,d=1,f=0`.
    #[command(allow_negative_numbers = true)]
    Invert {
        #[arg(long)]
        family: String,
        /// Comma-separated `name=value`; S9 takes `a1=..,b1=..,a2=..`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        y: f64,
    },
    /// Polar radii as CSV rows `theta,r,branch`.
    #[command(allow_negative_numbers = true)]
    Polar {
        #[arg(long, value_enum)]
        curve: PolarCurve,
        #[arg(long)]
        theta_min: f64,
        #[arg(long)]
        theta_max: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Rotated `y = Ae^{Bx}` or `y = ln(x/A)/B` as CSV rows `x,y,branch`.
    /// `phi` is counterclockwise.
    #[command(allow_negative_numbers = true)]
    Rotate {
        #[arg(long, value_enum)]
        curve: RotCurve,
        #[arg(long = "A")]
        a: f64,
        #[arg(long = "B")]
        b: f64,
        #[arg(long)]
        phi: f64,
        #[arg(long)]
        x_min: f64,
        #[arg(long)]
        x_max: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Run the closed-form validation gate and print the provenance table.
    Validate,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolarCurve {
    Log,
    Exp,
    W,
    Xexpx,
}

#[derive(Clone, Copy, ValueEnum)]
enum RotCurve {
    Exp,
    Log,
}

const EXIT_USAGE: u8 = 2;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::NoMatch { .. } => EXIT_USAGE,
        Error::Domain(_) | Error::InvalidParam(_) | Error::Overflow(_) => 3,
        Error::Convergence { .. } => 4,
        Error::Erratum { .. } => 5,
    }
}

/// 17 significant digits; non-finite values become `null`.
fn num(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    let n: Number = serde_json::from_str(&format!("{v:.16e}")).expect("formatted float is valid JSON");
    Value::Number(n)
}

/// Rewrite every non-integer number in `v` with [`num`].
fn fix_numbers(v: &mut Value) {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            *v = num(n.as_f64().unwrap_or(f64::NAN));
        }
        Value::Array(xs) => xs.iter_mut().for_each(fix_numbers),
        Value::Object(m) => m.values_mut().for_each(fix_numbers),
        _ => {}
    }
}

fn csv_num(v: f64) -> String {
    format!("{v:.16e}")
}

fn params_json(p: &ParamSet) -> Value {
    let mut m = Map::new();
    for name in ["a", "b", "c", "d", "f", "g"] {
        if let Some(v) = p.get(name) {
            m.insert(name.to_string(), num(v));
        }
    }
    for (i, (a, b)) in p.coeffs.iter().enumerate() {
        m.insert(format!("a{}", i + 1), num(*a));
        m.insert(format!("b{}", i + 1), num(*b));
    }
    Value::Object(m)
}

fn solutions_json(set: &SolutionSet) -> Value {
    let sols: Vec<Value> = set
        .solutions
        .iter()
        .map(|s| {
            json!({
                "x": num(s.x),
                "branches": s.branches_used.iter().map(|b| b.index()).collect::<Vec<_>>(),
                "case": s.case_tag.map(|c| format!("{c:?}").to_ascii_lowercase()),
                "residual": num(s.residual),
            })
        })
        .collect();
    Value::Array(sols)
}

fn source_json(src: &SolutionSource) -> Value {
    match src {
        SolutionSource::ClosedForm { reading } => json!({"kind": "closed_form", "reading": reading}),
        SolutionSource::Oracle => json!({"kind": "oracle"}),
    }
}

/// Solution JSON for a successful inversion or an erratum fallback.
fn solve_output(family: FamilyId, p: &ParamSet, trace: Option<&[String]>, res: Result<SolutionSet, Error>) -> Result<Value, Error> {
    let (set, erratum) = match res {
        Ok(set) => (set, false),
        Err(Error::Erratum { fallback, .. }) => (*fallback, true),
        Err(e) => return Err(e),
    };
    let mut out = json!({
        "family": family.name(),
        "params": params_json(p),
        "y": num(set.y),
        "source": source_json(&set.source),
        "erratum_unresolved": erratum,
        "solutions": solutions_json(&set),
    });
    if let Some(t) = trace {
        out["normalization_trace"] = json!(t);
    }
    Ok(out)
}

fn parse_params(family: FamilyId, text: &str) -> Result<ParamSet, String> {
    let mut p = ParamSet::new();
    let mut pairs: Vec<(usize, char, f64)> = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| format!("'{item}' is not name=value"))?;
        let (k, v) = (k.trim(), v.trim());
        let v: f64 = v.parse().map_err(|_| format!("'{v}' is not a number"))?;
        let mut chars = k.chars();
        let head = chars.next();
        let idx: Option<usize> = chars.as_str().parse().ok();
        match (family, head, idx) {
            (FamilyId::S9, Some(h @ ('a' | 'b')), Some(i)) if i >= 1 => pairs.push((i, h, v)),
            _ => p.set(k, v).map_err(|e| e.to_string())?,
        }
    }
    if !pairs.is_empty() {
        let n = pairs.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![(f64::NAN, f64::NAN); n];
        for (i, h, v) in pairs {
            if h == 'a' {
                coeffs[i - 1].0 = v;
            } else {
                coeffs[i - 1].1 = v;
            }
        }
        p.coeffs = coeffs;
    }
    Ok(p)
}

fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

fn branch_label(b: Option<BranchId>) -> String {
    b.map(|b| b.index().to_string()).unwrap_or_default()
}

enum Fail {
    Usage(String),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Fail> {
    let io = |e: std::io::Error| Fail::Usage(format!("write failed: {e}"));
    match cli.cmd {
        Cmd::W { branch, z, base } => {
            let br = BranchId::from_index(branch).ok_or_else(|| Fail::Usage(format!("branch must be 0 or -1, got {branch}")))?;
            let r = match base {
                Some(b) => eval_w_base(br, b, z)?,
                None => eval_w(br, z)?,
            };
            let v = json!({"w": num(r.value), "residual": num(r.residual), "iterations": r.iterations});
            writeln!(out, "{v}").map_err(io)?;
        }
        Cmd::Solve { equation, y } => {
            let e = parse(&equation).map_err(Error::from)?;
            let m = match_family(&e)?;
            let res = invert(m.family, &m.params, y);
            let erratum = matches!(res, Err(Error::Erratum { .. }));
            let v = solve_output(m.family, &m.params, Some(&m.normalization_trace), res)?;
            writeln!(out, "{v}").map_err(io)?;
            if erratum {
                return Ok(5);
            }
        }
        Cmd::Invert { family, params, y } => {
            let fam: FamilyId = family.parse().map_err(|e: Error| Fail::Usage(e.to_string()))?;
            let p = parse_params(fam, &params).map_err(Fail::Usage)?;
            let res = invert(fam, &p, y);
            let erratum = matches!(res, Err(Error::Erratum { .. }));
            let v = solve_output(fam, &p, None, res)?;
            writeln!(out, "{v}").map_err(io)?;
            if erratum {
                return Ok(5);
            }
        }
        Cmd::Polar { curve, theta_min, theta_max, steps } => {
            let kind = match curve {
                PolarCurve::Log => CurveKind::Log,
                PolarCurve::Exp => CurveKind::Exp,
                PolarCurve::W => CurveKind::LambertW,
                PolarCurve::Xexpx => CurveKind::XExpX,
            };
            writeln!(out, "theta,r,branch").map_err(io)?;
            for theta in grid(theta_min, theta_max, steps) {
                let Ok(rs) = polar_radius(kind, theta) else { continue };
                for r in rs.radii {
                    writeln!(out, "{},{},{}", csv_num(theta), csv_num(r.r), branch_label(r.branch)).map_err(io)?;
                }
            }
        }
        Cmd::Rotate { curve, a, b, phi, x_min, x_max, steps } => {
            let xs = grid(x_min, x_max, steps);
            writeln!(out, "x,y,branch").map_err(io)?;
            let quarter = (phi / FRAC_PI_2).round();
            if (phi - quarter * FRAC_PI_2).abs() < 1e-12 {
                if !matches!(curve, RotCurve::Exp) || a != 1.0 || b != 1.0 {
                    return Err(Error::Domain("quarter-turn rotations have a closed form only for y = e^x (A = B = 1)".into()).into());
                }
                let q = rotate_special(CurveKind::Exp, -(quarter as i64))?;
                for x in xs {
                    if let Ok(y) = q.eval(x) {
                        writeln!(out, "{},{},", csv_num(x), csv_num(y)).map_err(io)?;
                    }
                }
            } else {
                let spec = RotationSpec::new(a, b, phi)?;
                let f = match curve {
                    RotCurve::Exp => rotate_exp,
                    RotCurve::Log => rotate_log,
                };
                for x in xs {
                    for (br, y) in rotate_all(f, &spec, x) {
                        writeln!(out, "{},{},{}", csv_num(x), csv_num(y), br.index()).map_err(io)?;
                    }
                }
            }
        }
        Cmd::Validate => {
            let table = provenance_table();
            let unresolved = table
                .iter()
                .any(|r| r.is_unresolved() && r.id.parse::<FamilyId>().is_ok());
            let mut v = serde_json::to_value(&table).map_err(|e| Fail::Usage(e.to_string()))?;
            fix_numbers(&mut v);
            let doc = json!({"families_unresolved": unresolved, "records": v});
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("JSON value")).map_err(io)?;
            if unresolved {
                return Ok(5);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(Fail::Usage(msg)) => {
            eprintln!("{}", json!({"error": "usage", "message": msg}));
            ExitCode::from(EXIT_USAGE)
        }
        Err(Fail::Core(e)) => {
            let kind = match &e {
                Error::Parse(_) => "parse",
                Error::NoMatch { .. } => "no_match",
                Error::Domain(_) => "domain",
                Error::InvalidParam(_) => "invalid_param",
                Error::Overflow(_) => "overflow",
                Error::Convergence { .. } => "convergence",
                Error::Erratum { .. } => "erratum",
            };
            let mut v = json!({"error": kind, "message": e.to_string()});
            if let Error::Parse(p) = &e {
                v["position"] = json!(p.position);
                v["expected"] = json!(p.expected);
            }
            eprintln!("{v}");
            ExitCode::from(exit_code(&e))
        }
    }
}
