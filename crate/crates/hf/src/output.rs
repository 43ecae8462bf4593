//! JSON rendering of solver outcomes and reports.
//!
//! Sequences are embedded as their canonical text so every document both
//! round-trips through the parser and stays byte-identical across runs with
//! the same inputs and seed (maps serialize with sorted keys).

use hadamard::sequences::{Seq, ZeroSet};
use hadamard::solver::{SolveOutcome, SolverConfig};
use serde_json::{json, Value};

use crate::parser::{print_exppoly, print_sequence};
use crate::race::RaceReport;

pub fn outcome_json(o: &SolveOutcome) -> Value {
    match o {
        SolveOutcome::Solved { solution, valid_from, field_note, transcript } => json!({
            "status": "solved",
            "solution": print_exppoly(solution),
            "valid_from": valid_from,
            "field_note": field_note,
            "transcript": transcript,
        }),
        SolveOutcome::SolvedPair { numerator, denominator, valid_from, transcript } => json!({
            "status": "solved_pair",
            "numerator": print_exppoly(numerator),
            "denominator": print_exppoly(denominator),
            "valid_from": valid_from,
            "transcript": transcript,
        }),
        SolveOutcome::Refuted { cert, transcript } => json!({
            "status": "refuted",
            "certificate": serde_json::to_value(cert).expect("certificate serializes"),
            "transcript": transcript,
        }),
        SolveOutcome::Split { classes } => json!({
            "status": "split",
            "classes": classes
                .iter()
                .map(|(p, o)| {
                    json!({
                        "modulus": p.modulus,
                        "class": p.class,
                        "outcome": outcome_json(o),
                    })
                })
                .collect::<Vec<_>>(),
        }),
        SolveOutcome::Exhausted { bounds, transcript } => json!({
            "status": "exhausted",
            "bounds": bounds,
            "transcript": transcript,
        }),
    }
}

pub fn race_json(problem: &str, report: &RaceReport, cfg: &SolverConfig) -> Value {
    json!({
        "problem": problem,
        "winner": report.winner,
        "rounds": report.rounds,
        "outcome": outcome_json(&report.outcome),
        "config": serde_json::to_value(cfg).expect("config serializes"),
    })
}

pub fn solve_json(problem: &str, outcome: &SolveOutcome, cfg: &SolverConfig) -> Value {
    json!({
        "problem": problem,
        "outcome": outcome_json(outcome),
        "config": serde_json::to_value(cfg).expect("config serializes"),
    })
}

pub fn zeroset_json(z: &ZeroSet) -> Value {
    json!({
        "progressions": z.progressions
            .iter()
            .map(|(m, r)| json!({"modulus": m, "class": r}))
            .collect::<Vec<_>>(),
        "sporadic": z.sporadic,
        "exceptions": z.exceptions,
        "scan_bound": z.scan_bound,
    })
}

pub fn seq_json(s: &Seq) -> Value {
    json!({
        "canonical": print_sequence(s),
        "tail": print_exppoly(s.tail()),
        "overrides": s.overrides()
            .iter()
            .map(|(n, v)| json!({"n": n, "value": v.to_string()}))
            .collect::<Vec<_>>(),
    })
}

/// Exit code for a definitive-or-not outcome: 0 definitive, 2 exhausted.
pub fn outcome_exit_code(o: &SolveOutcome) -> i32 {
    if hadamard::solver::is_conclusive(o) {
        0
    } else {
        2
    }
}
