//! Batch runs over a directory of problem files.
//!
//! A corpus file is line-oriented: `key: value` pairs with `#` comment
//! lines. Required keys are `problem` (an equation in the text format) and
//! `expect` (solved | solved_pair | refuted | split | exhausted). Optional
//! keys: `id` (defaults to the file stem), `mode` (monic | general, default
//! monic), `solution` (a sequence the solved outcome must equal), `refuted_q`
//! (the certificate prime), `split` (comma-separated `class=status` pairs),
//! and numeric solver-config overrides (seed, d_max, prog_max, prog_depth,
//! k, q_max, period_max, modulus_bound, scan_bound, y_retries).
//!
//! Each case runs the deterministic race (monic) or the general solver,
//! validates the outcome against its annotations, and replays the solution
//! against the independent per-index oracle for n <= ORACLE_BOUND. Results
//! land in a CSV table and a JSON summary; any mismatch fails the run.

use std::path::Path;
use std::time::Instant;

use hadamard::sequences::ExpPoly;
use hadamard::solver::{solve_general, SolveOutcome, SolverConfig};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::oracle::rational_roots_of;
use crate::output::outcome_json;
use crate::parser::{parse_equation, parse_exppoly, print_equation, EquationSpec, ParseError};
use crate::race::{race, RaceMode};

/// Index bound for the per-case oracle replay.
pub const ORACLE_BOUND: u64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Monic,
    General,
}

impl Mode {
    fn label(self) -> &'static str {
        match self {
            Mode::Monic => "monic",
            Mode::General => "general",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusCase {
    pub id: String,
    pub mode: Mode,
    pub equation: EquationSpec,
    pub expect: String,
    pub expected_solution: Option<ExpPoly>,
    pub expected_q: Option<u64>,
    pub expected_split: Option<Vec<(u64, String)>>,
    pub config: SolverConfig,
}

#[derive(Clone, Debug)]
pub struct CaseRow {
    pub id: String,
    pub mode: String,
    pub outcome: String,
    pub d_used: Option<u64>,
    pub q_used: Option<u64>,
    pub millis: u128,
    pub seed: u64,
    pub failures: Vec<String>,
    pub outcome_detail: Value,
}

#[derive(Clone, Debug, Default)]
pub struct CorpusReport {
    pub rows: Vec<CaseRow>,
}

impl CorpusReport {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.failures.is_empty()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.rows.len()
    }
}

pub fn outcome_label(o: &SolveOutcome) -> &'static str {
    match o {
        SolveOutcome::Solved { .. } => "solved",
        SolveOutcome::SolvedPair { .. } => "solved_pair",
        SolveOutcome::Refuted { .. } => "refuted",
        SolveOutcome::Split { .. } => "split",
        SolveOutcome::Exhausted { .. } => "exhausted",
    }
}

// ---------------------------------------------------------------------------
// file format
// ---------------------------------------------------------------------------

pub fn load_case(path: &Path, base: &SolverConfig) -> Result<CorpusCase, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "case".to_string());
    parse_case(&text, &stem, base).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_case(text: &str, stem: &str, base: &SolverConfig) -> Result<CorpusCase, String> {
    let mut id = stem.to_string();
    let mut mode = Mode::Monic;
    let mut problem: Option<EquationSpec> = None;
    let mut expect: Option<String> = None;
    let mut solution: Option<ExpPoly> = None;
    let mut refuted_q: Option<u64> = None;
    let mut split: Option<Vec<(u64, String)>> = None;
    let mut config = base.clone();

    let perr = |what: &str, e: ParseError| format!("{what}: {e}");
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(format!("line {}: expected 'key: value'", lineno + 1));
        };
        let key = key.trim();
        let value = value.trim();
        let num = || value.parse::<u64>().map_err(|_| format!("line {}: bad number", lineno + 1));
        match key {
            "id" => id = value.to_string(),
            "mode" => {
                mode = match value {
                    "monic" => Mode::Monic,
                    "general" => Mode::General,
                    other => return Err(format!("unknown mode '{other}'")),
                }
            }
            "problem" => problem = Some(parse_equation(value).map_err(|e| perr("problem", e))?),
            "expect" => {
                let v = value.to_string();
                if !["solved", "solved_pair", "refuted", "split", "exhausted"].contains(&v.as_str()) {
                    return Err(format!("unknown expectation '{v}'"));
                }
                expect = Some(v);
            }
            "solution" => solution = Some(parse_exppoly(value).map_err(|e| perr("solution", e))?),
            "refuted_q" => refuted_q = Some(num()?),
            "split" => {
                let mut parts = Vec::new();
                for piece in value.split(',') {
                    let Some((c, s)) = piece.trim().split_once('=') else {
                        return Err(format!("bad split entry '{piece}'"));
                    };
                    let class = c
                        .trim()
                        .parse::<u64>()
                        .map_err(|_| format!("bad split class '{c}'"))?;
                    parts.push((class, s.trim().to_string()));
                }
                split = Some(parts);
            }
            "seed" => config.seed = num()?,
            "d_max" => config.d_max = num()?,
            "prog_max" => config.prog_max = num()?,
            "prog_depth" => config.prog_depth = num()? as u32,
            "k" => config.k = num()?,
            "q_max" => config.q_max = num()?,
            "period_max" => config.period_max = num()?,
            "modulus_bound" => config.modulus_bound = num()?,
            "scan_bound" => config.scan_bound = num()?,
            "y_retries" => config.y_retries = num()? as u32,
            other => return Err(format!("unknown key '{other}'")),
        }
    }
    Ok(CorpusCase {
        id,
        mode,
        equation: problem.ok_or("missing 'problem'")?,
        expect: expect.ok_or("missing 'expect'")?,
        expected_solution: solution,
        expected_q: refuted_q,
        expected_split: split,
        config,
    })
}

// ---------------------------------------------------------------------------
// oracle replay
// ---------------------------------------------------------------------------

/// Specialize the equation at one index; None when any coefficient fails to
/// evaluate to a rational (the invariant only binds integral indices) or the
/// leading coefficient vanishes (excluded by the solution contract).
fn specialize(coeffs: &[ExpPoly], n: u64) -> Option<Vec<BigRational>> {
    let mut values = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        values.push(c.eval_term(n).ok()?.as_rational()?);
    }
    if num_traits::Zero::is_zero(values.last()?) {
        return None;
    }
    Some(values)
}

/// Replay an outcome against the independent oracle on every index
/// n = class + modulus * t <= upto of the original line. Returns mismatch
/// descriptions; empty means consistent.
pub fn oracle_replay(
    coeffs: &[ExpPoly],
    outcome: &SolveOutcome,
    upto: u64,
    map: (u64, u64),
) -> Vec<String> {
    let (modulus, class) = map;
    let mut failures = Vec::new();
    let indices = |from: u64| {
        (from..)
            .map(move |t| (t, class + modulus * t))
            .take_while(move |(_, n)| *n <= upto)
    };
    match outcome {
        SolveOutcome::Solved { solution, valid_from, .. } => {
            for (t, n) in indices(*valid_from) {
                let Some(values) = specialize(coeffs, n) else { continue };
                let Ok(v) = solution.eval_term(t) else { continue };
                let Some(v) = v.as_rational() else { continue };
                if !rational_roots_of(&values).contains(&v) {
                    failures.push(format!("n = {n}: claimed root {v} not among oracle roots"));
                }
            }
        }
        SolveOutcome::SolvedPair { numerator, denominator, valid_from, .. } => {
            for (t, n) in indices(*valid_from) {
                let Some(values) = specialize(coeffs, n) else { continue };
                let (Ok(num), Ok(den)) = (numerator.eval_term(t), denominator.eval_term(t))
                else {
                    continue;
                };
                let (Some(num), Some(den)) = (num.as_rational(), den.as_rational()) else {
                    continue;
                };
                if num_traits::Zero::is_zero(&den) {
                    continue;
                }
                let v = num / den;
                if !rational_roots_of(&values).contains(&v) {
                    failures.push(format!("n = {n}: claimed root {v} not among oracle roots"));
                }
            }
        }
        SolveOutcome::Refuted { .. } => {
            for (_, n) in indices(0) {
                let Some(values) = specialize(coeffs, n) else { continue };
                let roots = rational_roots_of(&values);
                if !roots.is_empty() {
                    failures.push(format!(
                        "n = {n}: refuted but the oracle finds roots {roots:?}"
                    ));
                }
            }
        }
        SolveOutcome::Split { classes } => {
            for (p, o) in classes {
                // n = class + modulus * (p.class + p.modulus * s)
                let composed = (modulus * p.modulus, class + modulus * p.class);
                failures.extend(oracle_replay(coeffs, o, upto, composed));
            }
        }
        SolveOutcome::Exhausted { .. } => {}
    }
    failures
}

// ---------------------------------------------------------------------------
// execution
// ---------------------------------------------------------------------------

fn first_field_note_d(outcome: &SolveOutcome) -> Option<u64> {
    match outcome {
        SolveOutcome::Solved { field_note, .. } => field_note
            .as_deref()
            .and_then(|s| s.strip_prefix("D = "))
            .and_then(|s| s.split_whitespace().next())
            .and_then(|s| s.parse().ok()),
        SolveOutcome::Split { classes } => {
            classes.iter().find_map(|(_, o)| first_field_note_d(o))
        }
        _ => None,
    }
}

fn first_cert_q(outcome: &SolveOutcome) -> Option<u64> {
    match outcome {
        SolveOutcome::Refuted { cert, .. } => Some(cert.q),
        SolveOutcome::Split { classes } => classes.iter().find_map(|(_, o)| first_cert_q(o)),
        _ => None,
    }
}

pub fn run_case(case: &CorpusCase) -> CaseRow {
    let start = Instant::now();
    let mut failures = Vec::new();

    // parse/print stability
    let printed = print_equation(&case.equation);
    match parse_equation(&printed) {
        Ok(back) if back == case.equation => {}
        Ok(_) => failures.push(format!("round trip changed the equation: {printed}")),
        Err(e) => failures.push(format!("canonical form does not reparse: {e}")),
    }

    let outcome = match case.mode {
        Mode::Monic => match case.equation.monic_problem() {
            Some(p) => race(&p, &case.config, RaceMode::Deterministic).outcome,
            None => {
                failures.push("monic mode but the equation is not monic".into());
                return CaseRow {
                    id: case.id.clone(),
                    mode: case.mode.label().into(),
                    outcome: "error".into(),
                    d_used: None,
                    q_used: None,
                    millis: start.elapsed().as_millis(),
                    seed: case.config.seed,
                    failures,
                    outcome_detail: Value::Null,
                };
            }
        },
        Mode::General => solve_general(&case.equation.general_problem(), &case.config),
    };

    let label = outcome_label(&outcome);
    if label != case.expect {
        failures.push(format!("expected {} but got {label}", case.expect));
    }

    if let Some(want) = &case.expected_solution {
        match &outcome {
            SolveOutcome::Solved { solution, .. } if solution == want => {}
            SolveOutcome::Solved { solution, .. } => failures.push(format!(
                "expected solution {want} but got {solution}"
            )),
            _ => {}
        }
    }
    if let Some(want_q) = case.expected_q {
        match first_cert_q(&outcome) {
            Some(q) if q == want_q => {}
            got => failures.push(format!("expected certificate prime {want_q}, got {got:?}")),
        }
    }
    if let Some(want_split) = &case.expected_split {
        if let SolveOutcome::Split { classes } = &outcome {
            for (class, status) in want_split {
                let found = classes
                    .iter()
                    .find(|(p, _)| p.class == *class)
                    .map(|(_, o)| outcome_label(o));
                if found != Some(status.as_str()) {
                    failures.push(format!(
                        "class {class}: expected {status}, got {found:?}"
                    ));
                }
            }
        } else {
            failures.push("split annotation on a non-split outcome".into());
        }
    }

    failures.extend(oracle_replay(case.equation.coeffs(), &outcome, ORACLE_BOUND, (1, 0)));

    CaseRow {
        id: case.id.clone(),
        mode: case.mode.label().into(),
        outcome: label.into(),
        d_used: first_field_note_d(&outcome),
        q_used: first_cert_q(&outcome),
        millis: start.elapsed().as_millis(),
        seed: case.config.seed,
        failures,
        outcome_detail: outcome_json(&outcome),
    }
}

pub fn run_dir(dir: &Path, base: &SolverConfig) -> Result<CorpusReport, String> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| format!("cannot read {}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "hf"))
        .collect();
    paths.sort();
    let mut report = CorpusReport::default();
    for path in paths {
        match load_case(&path, base) {
            Ok(case) => report.rows.push(run_case(&case)),
            Err(e) => report.rows.push(CaseRow {
                id: path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string()),
                mode: "?".into(),
                outcome: "error".into(),
                d_used: None,
                q_used: None,
                millis: 0,
                seed: base.seed,
                failures: vec![e],
                outcome_detail: Value::Null,
            }),
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

pub fn report_csv(report: &CorpusReport) -> String {
    let mut out = String::from("id,mode,outcome,D_used,q_used,millis,seed\n");
    for r in &report.rows {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.id,
            r.mode,
            r.outcome,
            opt(r.d_used),
            opt(r.q_used),
            r.millis,
            r.seed
        ));
    }
    out
}

pub fn report_json(report: &CorpusReport, cfg: &SolverConfig) -> Value {
    json!({
        "total": report.rows.len(),
        "passed": report.passed(),
        "failed": report.rows
            .iter()
            .filter(|r| !r.failures.is_empty())
            .map(|r| r.id.clone())
            .collect::<Vec<_>>(),
        "cases": report.rows
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "mode": r.mode,
                    "outcome": r.outcome,
                    "D_used": r.d_used,
                    "q_used": r.q_used,
                    "millis": r.millis,
                    "seed": r.seed,
                    "failures": r.failures,
                    "detail": r.outcome_detail,
                })
            })
            .collect::<Vec<_>>(),
        "config": serde_json::to_value(cfg).expect("config serializes"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn cases_parse_and_run() {
        let text = "\
# a perfect square
mode: monic
problem: Y^2 - (exp 1*[4]^n) = 0
expect: solved
solution: exp 1*[2^1]^n
";
        let case = parse_case(text, "square", &base()).unwrap();
        let row = run_case(&case);
        assert!(row.failures.is_empty(), "{:?}", row.failures);
        assert_eq!(row.outcome, "solved");
        assert_eq!(row.d_used, Some(2));
    }

    #[test]
    fn tampered_expectations_are_mismatches() {
        let text = "\
problem: Y^2 - (exp 1*[4]^n) = 0
expect: refuted
";
        let case = parse_case(text, "tampered", &base()).unwrap();
        let row = run_case(&case);
        assert!(row.failures.iter().any(|f| f.contains("expected refuted but got solved")));
    }

    #[test]
    fn refuted_cases_check_the_prime() {
        let text = "\
problem: Y^2 - (exp 2*[4]^n) = 0
expect: refuted
refuted_q: 3
";
        let case = parse_case(text, "twice-square", &base()).unwrap();
        let row = run_case(&case);
        assert!(row.failures.is_empty(), "{:?}", row.failures);
        assert_eq!(row.q_used, Some(3));
    }

    #[test]
    fn split_annotations_match_classwise() {
        let text = "\
problem: Y^2 - (exp 1*[2]^n) = 0
expect: split
split: 0=solved, 1=refuted
";
        let case = parse_case(text, "half", &base()).unwrap();
        let row = run_case(&case);
        assert!(row.failures.is_empty(), "{:?}", row.failures);
    }

    #[test]
    fn oracle_replay_faults_wrong_roots() {
        // claim 3^n solves Y^2 = 4^n
        let eq = parse_equation("Y^2 - (exp 1*[4]^n) = 0").unwrap();
        let bogus = SolveOutcome::Solved {
            solution: parse_exppoly("exp 1*[3]^n").unwrap(),
            valid_from: 0,
            field_note: None,
            transcript: vec![],
        };
        let fails = oracle_replay(eq.coeffs(), &bogus, 10, (1, 0));
        assert!(!fails.is_empty());
    }

    #[test]
    fn csv_has_the_documented_columns() {
        let text = "\
problem: Y^2 - (exp 1*[4]^n) = 0
expect: solved
";
        let case = parse_case(text, "square", &base()).unwrap();
        let report = CorpusReport { rows: vec![run_case(&case)] };
        let csv = report_csv(&report);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("id,mode,outcome,D_used,q_used,millis,seed"));
        assert!(lines.next().unwrap().starts_with("square,monic,solved,2,,"));
    }
}
