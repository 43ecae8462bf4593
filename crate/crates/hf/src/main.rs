//! `hf`: command-line harness for sequence arithmetic and polynomial
//! equations over the recurrence-sequence ring.
//!
//! Exit codes: 0 success (solved or refuted as expected), 1 input/config or
//! corpus-mismatch failure, 2 search exhausted, 3 verification failure,
//! 4 parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hadamard::lattice::MultBasis;
use hadamard::laurent::{exppoly_to_laurent, YPoly};
use hadamard::obstruction::{find_obstruction, langweil_count, verify_cert, ObstructionCert};
use hadamard::sequences::Seq;
use hadamard::solver::{
    dth_root_sequence, hadamard_quotient, solve_general, solve_monic, SolverConfig,
};

use hf::config::{load_config, Overrides};
use hf::corpus::{report_csv, report_json, run_dir};
use hf::output::{outcome_exit_code, race_json, seq_json, solve_json, zeroset_json};
use hf::parser::{
    parse_equation, parse_sequence, parse_spec, print_equation, print_sequence, EquationSpec,
    ParseError, SpecExpr,
};
use hf::race::{race, RaceMode};

#[derive(Parser)]
#[command(name = "hf", version, about = "sequence-ring equation harness")]
struct Cli {
    /// TOML file with solver-config fields; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    d_max: Option<u64>,
    #[arg(long, global = true)]
    prog_max: Option<u64>,
    #[arg(long, global = true)]
    prog_depth: Option<u32>,
    /// verification window for accepted solutions
    #[arg(long, global = true)]
    k: Option<u64>,
    #[arg(long, global = true)]
    q_max: Option<u64>,
    #[arg(long, global = true)]
    period_max: Option<u64>,
    #[arg(long, global = true)]
    modulus_bound: Option<u64>,
    #[arg(long, global = true)]
    scan_bound: Option<u64>,
    #[arg(long, global = true)]
    y_retries: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a sequence or equation and print its canonical form
    Parse {
        /// text, or @path to read a file
        input: String,
    },
    /// Evaluate a sequence at one index or a range
    Eval {
        input: String,
        #[arg(long)]
        at: Option<u64>,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long, default_value_t = 9)]
        to: u64,
    },
    /// Pointwise and structural sequence operations
    Op {
        #[command(subcommand)]
        op: OpCmd,
    },
    /// d-th root of a sequence in the ring
    Root {
        #[arg(short = 'd', long = "degree")]
        degree: u32,
        input: String,
    },
    /// Solve an equation (monic when it is, general otherwise)
    Solve { input: String },
    /// Search for a mod-q obstruction certificate
    Refute { input: String },
    /// Race the solver against the refuter
    Race {
        input: String,
        /// run on real threads with first-result cancellation
        #[arg(long)]
        threads: bool,
    },
    /// Exact Hadamard quotient a / b when it lies in the ring
    Quotient { numerator: String, denominator: String },
    /// Zero set of a sequence: progressions + sporadic zeros
    Zeros { input: String },
    /// Count points on the equation's variety over F_q
    LwCount {
        input: String,
        #[arg(short, long)]
        q: u64,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Recheck a stored obstruction certificate against an equation
    VerifyCert {
        input: String,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Run every .hf case in a directory and report CSV + JSON
    Corpus {
        dir: PathBuf,
        /// write the CSV table here (defaults to stdout alongside the JSON)
        #[arg(long)]
        csv: Option<PathBuf>,
        /// write the JSON summary here instead of stdout
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OpCmd {
    Add { a: String, b: String },
    Mul { a: String, b: String },
    Shift {
        a: String,
        #[arg(long)]
        by: u64,
    },
    Restrict {
        a: String,
        #[arg(long)]
        class: u64,
        #[arg(long)]
        modulus: u64,
    },
    Interleave { parts: Vec<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides {
        seed: cli.seed,
        d_max: cli.d_max,
        prog_max: cli.prog_max,
        prog_depth: cli.prog_depth,
        k: cli.k,
        q_max: cli.q_max,
        period_max: cli.period_max,
        modulus_bound: cli.modulus_bound,
        scan_bound: cli.scan_bound,
        y_retries: cli.y_retries,
    };
    let cfg = match load_config(cli.config.as_deref(), &overrides) {
        Ok(cfg) => cfg,
        Err(e) => return fail(1, &e),
    };
    match run(cli.cmd, &cfg) {
        Ok(code) => code,
        Err(AppError::Parse(e)) => fail(4, &e.to_string()),
        Err(AppError::Other(msg)) => fail(1, &msg),
    }
}

enum AppError {
    Parse(ParseError),
    Other(String),
}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> Self {
        AppError::Parse(e)
    }
}

impl From<String> for AppError {
    fn from(e: String) -> Self {
        AppError::Other(e)
    }
}

fn fail(code: u8, message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

/// Fetch `@path` arguments from disk; everything else is literal text.
fn fetch(input: &str) -> Result<String, AppError> {
    if let Some(path) = input.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| AppError::Other(format!("cannot read {path}: {e}")))
    } else {
        Ok(input.to_string())
    }
}

fn sequence(input: &str) -> Result<Seq, AppError> {
    Ok(parse_sequence(&fetch(input)?)?)
}

fn equation(input: &str) -> Result<EquationSpec, AppError> {
    Ok(parse_equation(&fetch(input)?)?)
}

fn monic(input: &str) -> Result<(EquationSpec, hadamard::solver::MonicProblem), AppError> {
    let eq = equation(input)?;
    match eq.monic_problem() {
        Some(p) => Ok((eq, p)),
        None => Err(AppError::Other("the equation is not monic".into())),
    }
}

fn print_seq_result(s: &Seq) -> ExitCode {
    match print_sequence(s) {
        Some(text) => println!("{text}"),
        None => println!("{}", seq_json(s)),
    }
    ExitCode::SUCCESS
}

fn equation_ypoly(eq: &EquationSpec) -> Result<YPoly, AppError> {
    let roots: Vec<_> = eq
        .coeffs()
        .iter()
        .flat_map(|c| c.roots().cloned())
        .collect();
    let basis = MultBasis::new(&roots);
    let encoded: Result<Vec<_>, _> = eq
        .coeffs()
        .iter()
        .map(|c| exppoly_to_laurent(c, &basis))
        .collect();
    let fs = encoded.map_err(|e| AppError::Other(format!("cannot encode the equation: {e}")))?;
    Ok(YPoly::new(fs))
}

fn run(cmd: Cmd, cfg: &SolverConfig) -> Result<ExitCode, AppError> {
    match cmd {
        Cmd::Parse { input } => {
            match parse_spec(&fetch(&input)?)? {
                SpecExpr::Sequence(s) => return Ok(print_seq_result(&s)),
                SpecExpr::Equation(eq) => println!("{}", print_equation(&eq)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Eval { input, at, from, to } => {
            let s = sequence(&input)?;
            let (lo, hi) = match at {
                Some(n) => (n, n),
                None => (from, to),
            };
            for n in lo..=hi {
                println!("{n}\t{}", s.eval(n));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Op { op } => {
            let out = match op {
                OpCmd::Add { a, b } => sequence(&a)?.add(&sequence(&b)?),
                OpCmd::Mul { a, b } => sequence(&a)?.mul(&sequence(&b)?),
                OpCmd::Shift { a, by } => sequence(&a)?.shift(by),
                OpCmd::Restrict { a, class, modulus } => {
                    if modulus == 0 || class >= modulus {
                        return Err(AppError::Other("need class < modulus, modulus >= 1".into()));
                    }
                    sequence(&a)?.restrict(class, modulus)
                }
                OpCmd::Interleave { parts } => {
                    let seqs: Result<Vec<_>, _> = parts.iter().map(|p| sequence(p)).collect();
                    Seq::interleave(&seqs?)
                        .map_err(|e| AppError::Other(format!("interleave failed: {e}")))?
                }
            };
            Ok(print_seq_result(&out))
        }
        Cmd::Root { degree, input } => {
            if degree == 0 {
                return Err(AppError::Other("degree must be at least 1".into()));
            }
            let s = sequence(&input)?;
            if !s.is_pure() {
                return Err(AppError::Other("root extraction needs a pure sequence".into()));
            }
            let out = dth_root_sequence(s.tail(), degree, cfg);
            println!("{}", solve_json(&input, &out, cfg));
            Ok(ExitCode::from(outcome_exit_code(&out) as u8))
        }
        Cmd::Solve { input } => {
            let eq = equation(&input)?;
            let out = match eq.monic_problem() {
                Some(p) => solve_monic(&p, cfg),
                None => solve_general(&eq.general_problem(), cfg),
            };
            println!("{}", solve_json(&print_equation(&eq), &out, cfg));
            Ok(ExitCode::from(outcome_exit_code(&out) as u8))
        }
        Cmd::Refute { input } => {
            let (eq, p) = monic(&input)?;
            match find_obstruction(&p, cfg.q_max, cfg.period_max) {
                Some(cert) => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "problem": print_equation(&eq),
                            "certificate": serde_json::to_value(&cert).expect("serializes"),
                            "full_cover": cert.residues.len() as u64 == cert.period,
                        })
                    );
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "problem": print_equation(&eq),
                            "certificate": null,
                        })
                    );
                    Ok(ExitCode::from(2))
                }
            }
        }
        Cmd::Race { input, threads } => {
            let (eq, p) = monic(&input)?;
            let mode = if threads { RaceMode::Threaded } else { RaceMode::Deterministic };
            let report = race(&p, cfg, mode);
            println!("{}", race_json(&print_equation(&eq), &report, cfg));
            Ok(ExitCode::from(outcome_exit_code(&report.outcome) as u8))
        }
        Cmd::Quotient { numerator, denominator } => {
            let a2 = sequence(&numerator)?;
            let a1 = sequence(&denominator)?;
            if !a2.is_pure() || !a1.is_pure() {
                return Err(AppError::Other("quotients need pure sequences".into()));
            }
            if a1.is_zero() {
                return Err(AppError::Other("division by the zero sequence".into()));
            }
            match hadamard_quotient(a2.tail(), a1.tail(), cfg) {
                Some(q) => Ok(print_seq_result(&Seq::from(q))),
                None => {
                    println!("no quotient in the ring");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Cmd::Zeros { input } => {
            let s = sequence(&input)?;
            let z = s.zero_progressions(cfg.modulus_bound, cfg.scan_bound);
            println!("{}", zeroset_json(&z));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::LwCount { input, q, budget } => {
            let eq = equation(&input)?;
            let t = equation_ypoly(&eq)?;
            let report = langweil_count(&t, q, budget)
                .map_err(|e| AppError::Other(format!("count failed: {e}")))?;
            println!("{}", serde_json::to_value(&report).expect("report serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::VerifyCert { input, cert } => {
            let (_, p) = monic(&input)?;
            let text = std::fs::read_to_string(&cert)
                .map_err(|e| AppError::Other(format!("cannot read {}: {e}", cert.display())))?;
            let cert: ObstructionCert = serde_json::from_str(&text)
                .map_err(|e| AppError::Other(format!("bad certificate: {e}")))?;
            if verify_cert(&cert, &p) {
                println!("certificate verifies");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("certificate REJECTED");
                Ok(ExitCode::from(3))
            }
        }
        Cmd::Corpus { dir, csv, json } => {
            let report = run_dir(&dir, cfg)?;
            let csv_text = report_csv(&report);
            match &csv {
                Some(path) => std::fs::write(path, &csv_text)
                    .map_err(|e| AppError::Other(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{csv_text}"),
            }
            let json_value = report_json(&report, cfg);
            match &json {
                Some(path) => std::fs::write(path, json_value.to_string())
                    .map_err(|e| AppError::Other(format!("cannot write {}: {e}", path.display())))?,
                None => println!("{json_value}"),
            }
            if report.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "{} of {} cases failed",
                    report.rows.len() - report.passed(),
                    report.rows.len()
                );
                Ok(ExitCode::from(1))
            }
        }
    }
}
