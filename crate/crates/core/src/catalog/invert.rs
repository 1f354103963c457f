use super::forward::{check_params, forward};
use super::gate::gate_record;
use super::readings::{readings, Candidate, Trace};
use super::{residual_bound, DomainReport, FamilyId, ParamSet, Solution, SolutionSet, SolutionSource};
use crate::error::{domain, invalid, Error, Result};
use crate::oracle::{find_roots, RootSearchConfig};

/// Oracle subdivisions used for erratum fallbacks.
const FALLBACK_SUBDIVISIONS: usize = 8192;

/// Run one reading and keep candidates inside the forward domain, sorted and
/// merged. Residuals are attached but not filtered.
pub(crate) fn raw_solutions(
    family: FamilyId,
    p: &ParamSet,
    y: f64,
    reading: usize,
    tr: &mut Trace,
) -> Vec<Solution> {
    let cands = (readings(family)[reading].solve)(p, y, tr);
    finalize(family, p, y, cands)
}

fn finalize(family: FamilyId, p: &ParamSet, y: f64, cands: Vec<Candidate>) -> Vec<Solution> {
    let mut sols: Vec<Solution> = cands
        .into_iter()
        .filter(|c| c.x.is_finite())
        .filter_map(|c| {
            let fx = forward(family, p, c.x).ok()?;
            Some(Solution {
                x: c.x,
                branches_used: c.branches,
                case_tag: c.case,
                residual: (fx - y).abs(),
                intermediate: c.intermediate,
            })
        })
        .collect();
    sols.sort_by(|a, b| a.x.total_cmp(&b.x));
    let mut out: Vec<Solution> = Vec::with_capacity(sols.len());
    for s in sols {
        match out.last_mut() {
            Some(last) if (s.x - last.x).abs() <= 1e-12 * s.x.abs().max(1.0) => {
                for b in s.branches_used {
                    if !last.branches_used.contains(&b) {
                        last.branches_used.push(b);
                    }
                }
                if s.residual < last.residual {
                    last.residual = s.residual;
                }
            }
            _ => out.push(s),
        }
    }
    out
}

fn check_request(family: FamilyId, p: &ParamSet, y: f64) -> Result<()> {
    check_params(family, p)?;
    if !y.is_finite() {
        return Err(domain(format!("y = {y} is not finite")));
    }
    Ok(())
}

/// Invert with a specific reading, bypassing the gate. Solutions above the
/// residual bound are dropped.
pub fn invert_with_reading(family: FamilyId, p: &ParamSet, y: f64, reading: usize) -> Result<SolutionSet> {
    check_request(family, p, y)?;
    let rs = readings(family);
    if reading >= rs.len() {
        return Err(invalid(format!("{family} has {} reading(s), asked for #{reading}", rs.len())));
    }
    let mut tr = Trace::default();
    let sols = raw_solutions(family, p, y, reading, &mut tr);
    if !tr.violated.is_empty() && sols.is_empty() {
        return Err(domain(tr.violated.join("; ")));
    }
    let bound = residual_bound(y);
    let sols: Vec<Solution> = sols.into_iter().filter(|s| s.residual <= bound).collect();
    if sols.is_empty() {
        return Err(domain(format!("{family}: no real solution for y = {y}")));
    }
    Ok(SolutionSet {
        family,
        y,
        source: SolutionSource::ClosedForm {
            reading: rs[reading].name.to_string(),
        },
        solutions: sols,
    })
}

/// All real `x` with `forward(family, p, x) = y`, from the gate-approved
/// closed form. Unresolved families yield [`Error::Erratum`] carrying the
/// oracle's roots on the family's search interval.
pub fn invert(family: FamilyId, p: &ParamSet, y: f64) -> Result<SolutionSet> {
    check_request(family, p, y)?;
    match gate_record(family).active_reading {
        Some(idx) => invert_with_reading(family, p, y, idx),
        None => Err(Error::Erratum {
            family,
            fallback: Box::new(oracle_solve(family, p, y)),
        }),
    }
}

/// Same as [`invert`], restricted to the branch-difference families.
pub fn invert_branch_difference(family: FamilyId, p: &ParamSet, y: f64) -> Result<SolutionSet> {
    if !family.is_branch_difference() {
        return Err(invalid(format!("{family} is not a branch-difference family")));
    }
    invert(family, p, y)
}

/// Invert many targets at once; results keep the input order.
pub fn invert_batch(family: FamilyId, p: &ParamSet, ys: &[f64]) -> Vec<Result<SolutionSet>> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(ys.len().max(1));
    if workers <= 1 || ys.len() < 16 {
        return ys.iter().map(|&y| invert(family, p, y)).collect();
    }
    let chunk = ys.len().div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = ys
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|&y| invert(family, p, y)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("inversion worker panicked"))
            .collect()
    })
}

/// Roots of `forward(x) - y` on the family's search interval.
/// Oracle roots on the family's search interval. The interval is cut at
/// `+-10^k` (k = -3..=3) and each piece scanned with `subdivisions` steps, so
/// closely spaced roots near the origin are still bracketed separately.
pub(crate) fn oracle_roots(family: FamilyId, p: &ParamSet, y: f64, subdivisions: usize) -> Vec<f64> {
    let (lo, hi) = family.spec().search;
    let mut cuts = vec![lo];
    let mut marks: Vec<f64> = (-3..=3).map(|k| 10f64.powi(k)).flat_map(|m| [m, -m]).collect();
    marks.sort_by(f64::total_cmp);
    cuts.extend(marks.into_iter().filter(|&m| m > lo && m < hi));
    cuts.push(hi);
    let f = |x: f64| forward(family, p, x).map_or(f64::NAN, |v| v - y);
    let mut roots: Vec<f64> = Vec::new();
    for piece in cuts.windows(2) {
        let cfg = RootSearchConfig {
            lo: piece[0],
            hi: piece[1],
            subdivisions,
            ..Default::default()
        };
        for r in find_roots(f, &cfg) {
            let dup = roots
                .last()
                .is_some_and(|&l| (r - l).abs() <= 10.0 * cfg.bisect_tol.max(4.0 * f64::EPSILON * r.abs()));
            if !dup {
                roots.push(r);
            }
        }
    }
    roots
}

/// Oracle-only solution set; roots above the residual bound are dropped.
pub fn oracle_solve(family: FamilyId, p: &ParamSet, y: f64) -> SolutionSet {
    let bound = residual_bound(y);
    let solutions = oracle_roots(family, p, y, FALLBACK_SUBDIVISIONS)
        .into_iter()
        .filter_map(|x| {
            let r = (forward(family, p, x).ok()? - y).abs();
            (r <= bound).then_some(Solution {
                x,
                branches_used: Vec::new(),
                case_tag: None,
                residual: r,
                intermediate: None,
            })
        })
        .collect();
    SolutionSet {
        family,
        y,
        source: SolutionSource::Oracle,
        solutions,
    }
}

/// Evaluate every W argument of the family's inverse at `y` and report
/// which constraints fail. Never errors.
pub fn domain_check(family: FamilyId, p: &ParamSet, y: f64) -> DomainReport {
    let mut report = DomainReport {
        valid: false,
        branch_args: Vec::new(),
        violated: Vec::new(),
        notes: Vec::new(),
    };
    if let Err(e) = check_request(family, p, y) {
        report.violated.push(e.to_string());
        return report;
    }
    let gate = gate_record(family);
    let idx = gate.active_reading.unwrap_or(0);
    if gate.active_reading.is_none() {
        report
            .notes
            .push(format!("{family} is erratum-unresolved; arguments are those of the stated formula"));
    }
    let mut tr = Trace::default();
    let sols = raw_solutions(family, p, y, idx, &mut tr);
    if tr.violated.is_empty() && sols.is_empty() {
        tr.notes.push("no closed-form candidate lies in the forward domain".to_string());
    }
    report.branch_args = tr.args;
    report.violated = tr.violated;
    report.notes.extend(tr.notes);
    report.valid = report.violated.is_empty();
    report
}
