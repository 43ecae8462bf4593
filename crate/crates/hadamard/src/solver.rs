//! Solving monic (and general) polynomial equations whose coefficients are
//! exponential polynomials.
//!
//! The pipeline for Y^d + b_{d−1}(n)·Y^{d−1} + … + b_0(n) = 0: reduce the
//! root group to a torsion-free one by passing to classes mod the torsion
//! order; encode each class over a multiplicative lattice basis; search for
//! Laurent-polynomial roots of the encoded equation, substituting X ↦ X^D
//! along a divisibility-rich schedule so roots may use D-th roots of the
//! basis; map roots back, keep those whose values stay in the coefficient
//! field, and verify before emitting. When no root is found, a mod-q
//! obstruction certificate refutes the equation outright (all classes
//! excluded) or guides a split into arithmetic progressions that are solved
//! recursively. Every emitted solution is verified symbolically and by exact
//! evaluation; every refutation carries a re-checkable certificate.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_u64, lcm_u64};
use crate::lattice::MultBasis;
use crate::laurent::{exppoly_to_laurent, laurent_to_exppoly, LaurentPoly, YPoly};
use crate::obstruction::{find_obstruction, ObstructionCert};
use crate::radical::RadicalRoot;
use crate::scalar::Scalar;
use crate::sequences::{ExpPoly, Seq};
use crate::yroots::{y_roots, YConfig};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

/// Y^d + coeffs[d−1]·Y^{d−1} + … + coeffs[0] = 0; the degree is the number
/// of lower coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicProblem {
    coeffs: Vec<ExpPoly>,
}

impl MonicProblem {
    pub fn new(coeffs: Vec<ExpPoly>) -> Self {
        assert!(!coeffs.is_empty(), "the degree must be at least 1");
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Lower coefficients b_0 … b_{d−1}.
    pub fn coeffs(&self) -> &[ExpPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &ExpPoly {
        &self.coeffs[j]
    }
}

/// coeffs[d]·Y^d + … + coeffs[0] = 0 with a not-identically-zero leading
/// coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralProblem {
    coeffs: Vec<ExpPoly>,
}

impl GeneralProblem {
    pub fn new(coeffs: Vec<ExpPoly>) -> Self {
        assert!(coeffs.len() >= 2, "the degree must be at least 1");
        assert!(
            !coeffs.last().unwrap().is_zero(),
            "the leading coefficient must not vanish identically"
        );
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// All coefficients b_0 … b_d, lowest first.
    pub fn coeffs(&self) -> &[ExpPoly] {
        &self.coeffs
    }

    pub fn leading(&self) -> &ExpPoly {
        self.coeffs.last().unwrap()
    }
}

/// The residue class n ≡ class (mod modulus).
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Progression {
    pub modulus: u64,
    pub class: u64,
}

impl std::fmt::Display for Progression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n ≡ {} (mod {})", self.class, self.modulus)
    }
}

/// Outcome of a solve: a verified solution, a verified refutation, a split
/// into residue classes with their own outcomes, or an explicit give-up.
/// Split subproblems are stated in class coordinates: the outcome for
/// n ≡ r (mod m) concerns the sequence m ↦ original(r + m·modulus).
#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    Solved {
        solution: ExpPoly,
        valid_from: u64,
        field_note: Option<String>,
        transcript: Vec<String>,
    },
    /// The solution exists componentwise as numerator(n)/denominator(n)
    /// wherever the denominator is nonzero, but is not itself an
    /// exponential polynomial.
    SolvedPair {
        numerator: ExpPoly,
        denominator: ExpPoly,
        valid_from: u64,
        transcript: Vec<String>,
    },
    Refuted {
        cert: ObstructionCert,
        transcript: Vec<String>,
    },
    Split {
        classes: Vec<(Progression, SolveOutcome)>,
    },
    Exhausted {
        bounds: String,
        transcript: Vec<String>,
    },
}

/// True when the outcome settles every index: no Exhausted leaf anywhere.
pub fn is_conclusive(outcome: &SolveOutcome) -> bool {
    match outcome {
        SolveOutcome::Solved { .. }
        | SolveOutcome::SolvedPair { .. }
        | SolveOutcome::Refuted { .. } => true,
        SolveOutcome::Exhausted { .. } => false,
        SolveOutcome::Split { classes } => classes.iter().all(|(_, o)| is_conclusive(o)),
    }
}

/// How class solutions recombine into one sequence: class r mod `modulus`
/// holds the subsequence n = r, r + modulus, r + 2·modulus, ….
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecombinationPlan {
    pub modulus: u64,
}

impl RecombinationPlan {
    pub fn recombine(&self, class_solutions: &[ExpPoly]) -> Option<ExpPoly> {
        assert_eq!(class_solutions.len() as u64, self.modulus);
        ExpPoly::interleave(class_solutions).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Power substitutions tried in order; divisibility-rich values first.
    pub d_schedule: Vec<u64>,
    pub d_max: u64,
    /// Largest modulus tried in the progression split search.
    pub prog_max: u64,
    /// Nesting depth of progression splits.
    pub prog_depth: u32,
    /// Number of leading terms checked by exact evaluation in verification.
    pub k: u64,
    /// Prime bound for obstruction certificates.
    pub q_max: u64,
    /// Largest accepted certificate period.
    pub period_max: u64,
    /// Modulus bound for the zero-structure analysis of leading coefficients.
    pub modulus_bound: u64,
    /// Index bound for the sporadic-zero scan.
    pub scan_bound: u64,
    /// Retries for the randomized specialization in the root search.
    pub y_retries: u32,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            d_schedule: vec![1, 2, 6, 12, 24, 60, 120],
            d_max: 120,
            prog_max: 12,
            prog_depth: 3,
            k: 200,
            q_max: 200,
            period_max: 2000,
            modulus_bound: 64,
            scan_bound: 10_000,
            y_retries: 8,
            seed: 0x4841_4441,
        }
    }
}

// ---------------------------------------------------------------------------
// the coefficient field
// ---------------------------------------------------------------------------

/// Syntactic description of the field generated by the problem data: the
/// admissible torsion orders (always including 2, since −1 is rational) and,
/// per prime, the admissible denominator of its exponents. A candidate
/// solution staying within these bounds takes values in the coefficient
/// field; one exceeding them does not (coincidental containments such as
/// √2 ∈ Q(ω_8) are deliberately not chased — rejection only costs a split).
struct FieldProfile {
    torsion: u64,
    denoms: BTreeMap<u64, u64>,
}

impl FieldProfile {
    fn of(coeffs: &[ExpPoly]) -> Self {
        let mut profile = FieldProfile { torsion: 2, denoms: BTreeMap::new() };
        for b in coeffs {
            for (root, poly) in b.terms() {
                profile.absorb_root(root);
                for s in poly.coeffs() {
                    profile.absorb_scalar(s);
                }
            }
        }
        profile
    }

    fn absorb_root(&mut self, root: &RadicalRoot) {
        self.torsion = lcm_u64(self.torsion, root.torsion_order());
        for (p, e) in root.radicals() {
            let d = *e.denom() as u64;
            let entry = self.denoms.entry(*p).or_insert(1);
            *entry = lcm_u64(*entry, d);
        }
    }

    fn absorb_scalar(&mut self, s: &Scalar) {
        for (mono, c) in s.terms() {
            self.torsion = lcm_u64(self.torsion, c.normalize().order());
            for (p, e) in mono.exponents() {
                let d = *e.denom() as u64;
                let entry = self.denoms.entry(*p).or_insert(1);
                *entry = lcm_u64(*entry, d);
            }
        }
    }

    fn torsion_excess(&self, order: u64) -> u64 {
        order / gcd_u64(order, self.torsion)
    }

    fn denom_excess(&self, p: u64, denom: u64) -> u64 {
        let allowed = self.denoms.get(&p).copied().unwrap_or(1);
        denom / gcd_u64(denom, allowed)
    }

    /// None when the candidate's values stay in the coefficient field;
    /// otherwise the modulus of the progression split on which they would.
    fn assess(&self, cand: &ExpPoly) -> Option<u64> {
        let mut hint = 1u64;
        for (root, poly) in cand.terms() {
            hint = lcm_u64(hint, self.torsion_excess(root.torsion_order()));
            for (p, e) in root.radicals() {
                hint = lcm_u64(hint, self.denom_excess(*p, *e.denom() as u64));
            }
            for s in poly.coeffs() {
                for (mono, c) in s.terms() {
                    hint = lcm_u64(hint, self.torsion_excess(c.normalize().order()));
                    for (p, e) in mono.exponents() {
                        hint = lcm_u64(hint, self.denom_excess(*p, *e.denom() as u64));
                    }
                }
            }
        }
        (hint > 1).then_some(hint)
    }
}

// ---------------------------------------------------------------------------
// torsion reduction
// ---------------------------------------------------------------------------

/// Split off the torsion of the root group: on each class mod N (the lcm of
/// the torsion orders), the restricted coefficients generate a torsion-free
/// group. Class solutions recombine by interleaving.
pub fn torsion_reduce(p: &MonicProblem) -> (u64, Vec<MonicProblem>, RecombinationPlan) {
    let mut n = 1u64;
    for b in p.coeffs() {
        for (root, _) in b.terms() {
            n = lcm_u64(n, root.torsion_order());
        }
    }
    let classes = (0..n)
        .map(|c| MonicProblem::new(p.coeffs().iter().map(|b| b.restrict(c, n)).collect()))
        .collect();
    (n, classes, RecombinationPlan { modulus: n })
}

fn restrict_problem(p: &MonicProblem, r: u64, m: u64) -> MonicProblem {
    MonicProblem::new(p.coeffs().iter().map(|b| b.restrict(r, m)).collect())
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

/// Check that `candidate` solves the equation: once symbolically (the
/// canonical residual must vanish) and once by exact evaluation of the
/// first cfg.k terms, through cyclotomic values where the data permits and
/// through scalar arithmetic otherwise. Returns the transcript.
pub fn verify_solution(
    p: &MonicProblem,
    candidate: &ExpPoly,
    cfg: &SolverConfig,
) -> Result<Vec<String>, SolverError> {
    let d = p.degree();
    let mut acc = ExpPoly::constant(Scalar::one());
    for j in (0..d).rev() {
        acc = acc.mul(candidate).add(p.coeff(j));
    }
    if !acc.is_zero() {
        return Err(SolverError::VerificationFailed(format!(
            "nonzero canonical residual {acc}"
        )));
    }
    let mut transcript =
        vec!["symbolic: the canonical residual of the candidate is zero".to_string()];

    let mut cyclotomic_indices = 0u64;
    for n in 0..cfg.k {
        let values: Option<Vec<_>> = (0..d)
            .map(|j| p.coeff(j).eval_term(n).ok())
            .chain([candidate.eval_term(n).ok()])
            .collect();
        let zero = match values {
            Some(mut vals) => {
                cyclotomic_indices += 1;
                let y = vals.pop().unwrap();
                let mut acc = crate::cyclotomic::CyclotomicNumber::one();
                for j in (0..d).rev() {
                    acc = acc.mul(&y).add(&vals[j]);
                }
                acc.is_zero()
            }
            None => {
                let y = candidate.eval(n);
                let mut acc = Scalar::one();
                for j in (0..d).rev() {
                    acc = acc.mul(&y).add(&p.coeff(j).eval(n));
                }
                acc.is_zero()
            }
        };
        if !zero {
            return Err(SolverError::VerificationFailed(format!(
                "residual is nonzero at n = {n}"
            )));
        }
    }
    transcript.push(format!(
        "evaluation: residual is zero at n = 0…{} ({} cyclotomic, {} scalar)",
        cfg.k - 1,
        cyclotomic_indices,
        cfg.k - cyclotomic_indices
    ));
    Ok(transcript)
}

// ---------------------------------------------------------------------------
// the monic pipeline
// ---------------------------------------------------------------------------

pub fn solve_monic(p: &MonicProblem, cfg: &SolverConfig) -> SolveOutcome {
    let profile = FieldProfile::of(p.coeffs());
    let (n, classes, _plan) = torsion_reduce(p);
    if n == 1 {
        return solve_class(&classes[0], cfg, 0, &profile);
    }
    let outcomes: Vec<(Progression, SolveOutcome)> = classes
        .iter()
        .enumerate()
        .map(|(c, sub)| {
            (
                Progression { modulus: n, class: c as u64 },
                solve_class(sub, cfg, 0, &profile),
            )
        })
        .collect();
    merge_or_split(p, cfg, outcomes, vec![format!("torsion order {n}: split into {n} classes")])
}

/// Interleave all-Solved class outcomes back into one verified solution;
/// report a Split otherwise.
fn merge_or_split(
    p: &MonicProblem,
    cfg: &SolverConfig,
    outcomes: Vec<(Progression, SolveOutcome)>,
    mut transcript: Vec<String>,
) -> SolveOutcome {
    let modulus = outcomes[0].0.modulus;
    let all_solved = outcomes
        .iter()
        .all(|(_, o)| matches!(o, SolveOutcome::Solved { .. }));
    if all_solved {
        let mut parts = Vec::with_capacity(outcomes.len());
        let mut valid_from = 0u64;
        let mut notes = BTreeSet::new();
        for (prog, o) in &outcomes {
            if let SolveOutcome::Solved { solution, valid_from: v, field_note, .. } = o {
                parts.push(solution.clone());
                valid_from = valid_from.max(prog.class + modulus * v);
                if let Some(note) = field_note {
                    notes.insert(note.clone());
                }
            }
        }
        if let Some(merged) = (RecombinationPlan { modulus }).recombine(&parts) {
            if let Ok(vt) = verify_solution(p, &merged, cfg) {
                transcript.push(format!(
                    "all {} classes solved; interleaved back into one sequence",
                    outcomes.len()
                ));
                transcript.extend(vt);
                let mut note = format!("interleaved from classes mod {modulus}");
                if !notes.is_empty() {
                    note.push_str(&format!(
                        " ({})",
                        notes.into_iter().collect::<Vec<_>>().join("; ")
                    ));
                }
                return SolveOutcome::Solved {
                    solution: merged,
                    valid_from,
                    field_note: Some(note),
                    transcript,
                };
            }
        }
    }
    SolveOutcome::Split { classes: outcomes }
}

/// Solve one torsion-free problem: D-schedule root search, then obstruction,
/// then recursive progression splits.
fn solve_class(
    p: &MonicProblem,
    cfg: &SolverConfig,
    depth: u32,
    profile: &FieldProfile,
) -> SolveOutcome {
    let d = p.degree();
    let mut transcript = Vec::new();

    // a linear equation carries its solution on its face
    if d == 1 {
        let candidate = p.coeff(0).neg();
        return match verify_solution(p, &candidate, cfg) {
            Ok(vt) => SolveOutcome::Solved {
                solution: candidate,
                valid_from: 0,
                field_note: None,
                transcript: vt,
            },
            Err(e) => SolveOutcome::Exhausted {
                bounds: format!("linear solution rejected: {e}"),
                transcript,
            },
        };
    }

    let roots: Vec<RadicalRoot> = {
        let mut set = BTreeSet::new();
        for b in p.coeffs() {
            for (r, _) in b.terms() {
                set.insert(r.clone());
            }
        }
        set.into_iter().collect()
    };
    debug_assert!(
        roots.iter().all(|r| r.torsion_order() == 1),
        "torsion must be split off before the class search"
    );
    let basis = MultBasis::new(&roots);
    let encoded: Result<Vec<LaurentPoly>, _> =
        p.coeffs().iter().map(|b| exppoly_to_laurent(b, &basis)).collect();

    let mut suggested: BTreeSet<u64> = BTreeSet::new();
    match &encoded {
        Ok(fs) => {
            let ycfg = YConfig { retries: cfg.y_retries, seed: cfg.seed, ..YConfig::default() };
            for &dd in cfg.d_schedule.iter().filter(|dd| **dd <= cfg.d_max) {
                let s_d = YPoly::monic(fs.iter().map(|f| f.subst_power(dd)).collect());
                let found = match y_roots(&s_d, &ycfg) {
                    Ok(rs) => rs,
                    Err(e) => {
                        transcript.push(format!("D = {dd}: root search undecided ({e})"));
                        continue;
                    }
                };
                let saturated = basis.saturate(dd);
                let mut usable: Vec<(bool, String, ExpPoly)> = Vec::new();
                for root in &found {
                    let cand = laurent_to_exppoly(root, &saturated);
                    match progressionfile_assessment(profile, &cand) {
                        None => {
                            if verify_solution(p, &cand, cfg).is_ok() {
                                usable.push((!is_principal(&cand), cand.to_string(), cand));
                            }
                        }
                        Some(hint) => {
                            transcript.push(format!(
                                "D = {dd}: root {cand} leaves the coefficient field \
                                 (admissible on classes mod {hint})"
                            ));
                            if hint >= 2 && hint <= 60 {
                                suggested.insert(hint);
                            }
                        }
                    }
                }
                usable.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
                if let Some((_, _, solution)) = usable.into_iter().next() {
                    let vt = verify_solution(p, &solution, cfg)
                        .expect("the chosen candidate was already verified");
                    transcript.push(format!("root found at D = {dd}"));
                    transcript.extend(vt);
                    return SolveOutcome::Solved {
                        solution,
                        valid_from: 0,
                        field_note: Some(format!("D = {dd}")),
                        transcript,
                    };
                }
                transcript.push(format!("D = {dd}: no usable root"));
            }
        }
        Err(e) => {
            transcript.push(format!("coefficients not encodable over the root lattice ({e})"));
        }
    }

    // refutation; a certificate excluding only part of the classes guides
    // the split below instead
    let mut partial: Option<ObstructionCert> = None;
    match find_obstruction(p, cfg.q_max, cfg.period_max) {
        Some(cert) if cert.residues.len() as u64 == cert.period => {
            transcript.push(format!(
                "no class mod {} has a root over F_{}",
                cert.period, cert.q
            ));
            return SolveOutcome::Refuted { cert, transcript };
        }
        Some(cert) => {
            transcript.push(format!(
                "partial obstruction: q = {} excludes {} of {} classes",
                cert.q,
                cert.residues.len(),
                cert.period
            ));
            if cert.period >= 2 && cert.period <= 60 {
                suggested.insert(cert.period);
            }
            partial = Some(cert);
        }
        None => {
            transcript.push(format!("no obstruction for primes up to {}", cfg.q_max));
        }
    }

    if depth < cfg.prog_depth {
        let mut moduli = suggested;
        moduli.extend(2..=cfg.prog_max);
        for m in moduli {
            let mut classes = Vec::with_capacity(m as usize);
            let mut conclusive = true;
            for r in 0..m {
                let out = solve_class(&restrict_problem(p, r, m), cfg, depth + 1, profile);
                if !is_conclusive(&out) {
                    conclusive = false;
                    break;
                }
                classes.push((Progression { modulus: m, class: r }, out));
            }
            if conclusive {
                transcript.push(format!("split into {m} classes settles every index"));
                return merge_or_split(p, cfg, classes, transcript);
            }
        }
    }

    let mut bounds = format!(
        "D ≤ {}, primes ≤ {}, periods ≤ {}, split moduli ≤ {}, depth {}",
        cfg.d_max, cfg.q_max, cfg.period_max, cfg.prog_max, cfg.prog_depth
    );
    if let Some(c) = partial {
        bounds.push_str(&format!(
            "; a partial mod-{} obstruction excludes {} of {} classes",
            c.q,
            c.residues.len(),
            c.period
        ));
    }
    SolveOutcome::Exhausted { bounds, transcript }
}

fn progressionfile_assessment(profile: &FieldProfile, cand: &ExpPoly) -> Option<u64> {
    profile.assess(cand)
}

/// Principal candidates have a positive rational leading scalar.
fn is_principal(e: &ExpPoly) -> bool {
    match e.terms().last() {
        None => true,
        Some((_, poly)) => poly
            .coeffs()
            .iter()
            .rev()
            .find(|s| !s.is_zero())
            .and_then(|s| s.as_rational())
            .map(|r| r.is_positive())
            .unwrap_or(false),
    }
}

// ---------------------------------------------------------------------------
// d-th roots and Hadamard quotients
// ---------------------------------------------------------------------------

/// Solve Y^d = b. Tries the direct d-th root in the Laurent encoding before
/// the full pipeline.
pub fn dth_root_sequence(b: &ExpPoly, d: u32, cfg: &SolverConfig) -> SolveOutcome {
    assert!(d >= 1);
    let mut coeffs = vec![ExpPoly::zero(); d as usize];
    coeffs[0] = b.neg();
    let p = MonicProblem::new(coeffs);

    if b.terms().iter().all(|(r, _)| r.torsion_order() == 1) {
        let roots: Vec<RadicalRoot> = b.terms().iter().map(|(r, _)| r.clone()).collect();
        let basis = MultBasis::new(&roots);
        if let Ok(f) = exppoly_to_laurent(b, &basis) {
            let profile = FieldProfile::of(p.coeffs());
            let mut substitutions = vec![1u64];
            if d > 1 {
                substitutions.push(d as u64);
            }
            for dd in substitutions {
                let Some(root) = f.subst_power(dd).dth_root(d) else { continue };
                let cand = laurent_to_exppoly(&root, &basis.saturate(dd));
                if profile.assess(&cand).is_none() {
                    if let Ok(mut vt) = verify_solution(&p, &cand, cfg) {
                        vt.insert(0, "direct Laurent d-th root".to_string());
                        return SolveOutcome::Solved {
                            solution: cand,
                            valid_from: 0,
                            field_note: Some("direct Laurent root".to_string()),
                            transcript: vt,
                        };
                    }
                }
            }
        }
    }
    solve_monic(&p, cfg)
}

/// The componentwise quotient a2 ⊘ a1 as an exponential polynomial, when one
/// exists: exact Laurent division over the combined basis, retried over
/// power substitutions so the quotient may use roots of the divided group.
/// Absence is inconclusive, not a disproof.
pub fn hadamard_quotient(a2: &ExpPoly, a1: &ExpPoly, cfg: &SolverConfig) -> Option<ExpPoly> {
    assert!(!a1.is_zero(), "cannot divide by the zero sequence");
    let mut n = 1u64;
    for (r, _) in a2.terms().iter().chain(a1.terms()) {
        n = lcm_u64(n, r.torsion_order());
    }
    if n > 1 {
        let parts: Option<Vec<ExpPoly>> = (0..n)
            .map(|c| quotient_torsion_free(&a2.restrict(c, n), &a1.restrict(c, n), cfg))
            .collect();
        let q = ExpPoly::interleave(&parts?).ok()?;
        return (q.mul(a1) == *a2).then_some(q);
    }
    quotient_torsion_free(a2, a1, cfg)
}

fn quotient_torsion_free(a2: &ExpPoly, a1: &ExpPoly, cfg: &SolverConfig) -> Option<ExpPoly> {
    if a1.is_zero() {
        // a vacuous class: any quotient works there, pick 0
        return a2.is_zero().then(ExpPoly::zero);
    }
    let roots: Vec<RadicalRoot> = {
        let mut set = BTreeSet::new();
        for (r, _) in a2.terms().iter().chain(a1.terms()) {
            set.insert(r.clone());
        }
        set.into_iter().collect()
    };
    let basis = MultBasis::new(&roots);
    let f2 = exppoly_to_laurent(a2, &basis).ok()?;
    let f1 = exppoly_to_laurent(a1, &basis).ok()?;
    for &dd in cfg.d_schedule.iter().filter(|dd| **dd <= cfg.d_max) {
        if let Some(h) = f2.subst_power(dd).exact_div(&f1.subst_power(dd)) {
            let q = laurent_to_exppoly(&h, &basis.saturate(dd));
            if q.mul(a1) == *a2 {
                return Some(q);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// general (non-monic) equations
// ---------------------------------------------------------------------------

/// Solve b_d(n)·Y^d + … + b_0(n) = 0 for all n with b_d(n) ≠ 0: classes
/// where b_d vanishes identically are vacuous and get the zero solution;
/// elsewhere the substitution Z = b_d·Y yields a monic problem whose
/// solution is divided back by b_d, componentwise if need be.
pub fn solve_general(p: &GeneralProblem, cfg: &SolverConfig) -> SolveOutcome {
    let d = p.degree();
    if *p.leading() == ExpPoly::constant(Scalar::one()) {
        return solve_monic(&MonicProblem::new(p.coeffs()[..d].to_vec()), cfg);
    }

    let zeros = Seq::from(p.leading().clone())
        .zero_progressions(cfg.modulus_bound, cfg.scan_bound);
    let m = zeros.progressions.iter().fold(1u64, |acc, (pm, _)| lcm_u64(acc, *pm));
    let mut transcript = Vec::new();
    if !zeros.sporadic.is_empty() {
        transcript.push(format!(
            "the leading coefficient vanishes sporadically at {:?} (scanned to {}); \
             the solution contract excludes those indices",
            zeros.sporadic, zeros.scan_bound
        ));
    }

    let outcomes: Vec<(Progression, SolveOutcome)> = (0..m)
        .map(|r| {
            let prog = Progression { modulus: m, class: r };
            let out = if p.leading().restrict(r, m).is_zero() {
                SolveOutcome::Solved {
                    solution: ExpPoly::zero(),
                    valid_from: 0,
                    field_note: None,
                    transcript: vec![
                        "the leading coefficient vanishes identically on this class; \
                         the equation is vacuous and the solution is fixed to 0"
                            .to_string(),
                    ],
                }
            } else {
                solve_general_class(p, r, m, cfg)
            };
            (prog, out)
        })
        .collect();

    if m == 1 {
        let (_, out) = outcomes.into_iter().next().unwrap();
        return prepend_transcript(out, transcript);
    }
    transcript.push(format!(
        "leading-coefficient zero classes split the line mod {m}"
    ));
    merge_general(p, cfg, outcomes, transcript)
}

fn solve_general_class(p: &GeneralProblem, r: u64, m: u64, cfg: &SolverConfig) -> SolveOutcome {
    let d = p.degree();
    let bd = p.leading().restrict(r, m);
    let monic = MonicProblem::new(
        (0..d)
            .map(|j| {
                let mut c = p.coeffs()[j].restrict(r, m);
                for _ in 0..(d - 1 - j) {
                    c = c.mul(&bd);
                }
                c
            })
            .collect(),
    );
    match solve_monic(&monic, cfg) {
        SolveOutcome::Solved { solution: z, valid_from, field_note, mut transcript } => {
            transcript.push(
                "solved the monic transform in Z = b_d·Y (coefficients multiplied by \
                 powers of b_d)"
                    .to_string(),
            );
            let restricted: Vec<ExpPoly> =
                (0..=d).map(|j| p.coeffs()[j].restrict(r, m)).collect();
            match hadamard_quotient(&z, &bd, cfg) {
                Some(a) => {
                    if !general_spot_check(&restricted, &a, None, cfg.k) {
                        transcript.push(
                            "exact evaluation of the recovered quotient failed".to_string(),
                        );
                        return SolveOutcome::Exhausted {
                            bounds: "quotient consistency check failed".to_string(),
                            transcript,
                        };
                    }
                    transcript.push(format!("recovered Y = Z ⊘ b_d = {a}"));
                    SolveOutcome::Solved { solution: a, valid_from, field_note, transcript }
                }
                None => {
                    if !general_spot_check(&restricted, &z, Some(&bd), cfg.k) {
                        transcript
                            .push("exact evaluation of the pair solution failed".to_string());
                        return SolveOutcome::Exhausted {
                            bounds: "pair consistency check failed".to_string(),
                            transcript,
                        };
                    }
                    transcript.push(
                        "the quotient by b_d is not an exponential polynomial; reporting \
                         the componentwise pair (Z-solution, b_d)"
                            .to_string(),
                    );
                    SolveOutcome::SolvedPair {
                        numerator: z,
                        denominator: bd,
                        valid_from,
                        transcript,
                    }
                }
            }
        }
        other => other,
    }
}

/// Exact check of Σ b_j(n)·y(n)^j = 0 at n < k, skipping indices where the
/// leading coefficient vanishes; y = num/den when a denominator is given.
fn general_spot_check(
    coeffs: &[ExpPoly],
    num: &ExpPoly,
    den: Option<&ExpPoly>,
    k: u64,
) -> bool {
    let d = coeffs.len() - 1;
    for n in 0..k {
        let lead = coeffs[d].eval(n);
        if lead.is_zero() {
            continue;
        }
        let y = match den {
            None => num.eval(n),
            Some(b) => {
                let bv = b.eval(n);
                match bv.inverse() {
                    Some(inv) => num.eval(n).mul(&inv),
                    None => continue,
                }
            }
        };
        let mut acc = lead;
        for j in (0..d).rev() {
            acc = acc.mul(&y).add(&coeffs[j].eval(n));
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

fn prepend_transcript(out: SolveOutcome, mut lines: Vec<String>) -> SolveOutcome {
    if lines.is_empty() {
        return out;
    }
    match out {
        SolveOutcome::Solved { solution, valid_from, field_note, transcript } => {
            lines.extend(transcript);
            SolveOutcome::Solved { solution, valid_from, field_note, transcript: lines }
        }
        SolveOutcome::SolvedPair { numerator, denominator, valid_from, transcript } => {
            lines.extend(transcript);
            SolveOutcome::SolvedPair { numerator, denominator, valid_from, transcript: lines }
        }
        SolveOutcome::Refuted { cert, transcript } => {
            lines.extend(transcript);
            SolveOutcome::Refuted { cert, transcript: lines }
        }
        SolveOutcome::Exhausted { bounds, transcript } => {
            lines.extend(transcript);
            SolveOutcome::Exhausted { bounds, transcript: lines }
        }
        split @ SolveOutcome::Split { .. } => split,
    }
}

/// Recombine general-equation class outcomes: all plain solutions interleave
/// into one sequence; any componentwise pairs promote the rest and
/// interleave numerators and denominators; mixtures stay split.
fn merge_general(
    p: &GeneralProblem,
    cfg: &SolverConfig,
    outcomes: Vec<(Progression, SolveOutcome)>,
    transcript: Vec<String>,
) -> SolveOutcome {
    let modulus = outcomes[0].0.modulus;
    let solvedish = outcomes.iter().all(|(_, o)| {
        matches!(o, SolveOutcome::Solved { .. } | SolveOutcome::SolvedPair { .. })
    });
    if !solvedish {
        return SolveOutcome::Split { classes: outcomes };
    }
    let any_pair = outcomes
        .iter()
        .any(|(_, o)| matches!(o, SolveOutcome::SolvedPair { .. }));
    let one = ExpPoly::constant(Scalar::one());
    let mut nums = Vec::with_capacity(outcomes.len());
    let mut dens = Vec::with_capacity(outcomes.len());
    let mut valid_from = 0u64;
    let mut merged_transcript = transcript;
    for (prog, o) in &outcomes {
        match o {
            SolveOutcome::Solved { solution, valid_from: v, .. } => {
                nums.push(solution.clone());
                dens.push(one.clone());
                valid_from = valid_from.max(prog.class + modulus * v);
            }
            SolveOutcome::SolvedPair { numerator, denominator, valid_from: v, .. } => {
                nums.push(numerator.clone());
                dens.push(denominator.clone());
                valid_from = valid_from.max(prog.class + modulus * v);
            }
            _ => unreachable!("screened above"),
        }
    }
    let coeffs = p.coeffs();
    if any_pair {
        let (num, den) = match (ExpPoly::interleave(&nums), ExpPoly::interleave(&dens)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return SolveOutcome::Split { classes: outcomes },
        };
        if !general_spot_check(coeffs, &num, Some(&den), cfg.k) {
            return SolveOutcome::Split { classes: outcomes };
        }
        merged_transcript.push(format!(
            "interleaved {} class pairs into one componentwise quotient",
            outcomes.len()
        ));
        SolveOutcome::SolvedPair {
            numerator: num,
            denominator: den,
            valid_from,
            transcript: merged_transcript,
        }
    } else {
        let merged = match ExpPoly::interleave(&nums) {
            Ok(a) => a,
            Err(_) => return SolveOutcome::Split { classes: outcomes },
        };
        if !general_spot_check(coeffs, &merged, None, cfg.k) {
            return SolveOutcome::Split { classes: outcomes };
        }
        merged_transcript.push(format!(
            "interleaved {} class solutions; valid wherever the leading coefficient \
             is nonzero",
            outcomes.len()
        ));
        SolveOutcome::Solved {
            solution: merged,
            valid_from,
            field_note: None,
            transcript: merged_transcript,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::Poly;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn geometric(k: i64) -> ExpPoly {
        ExpPoly::geometric(RadicalRoot::from_integer(k).unwrap())
    }

    fn constant(k: i64) -> ExpPoly {
        ExpPoly::constant(Scalar::from_integer(k))
    }

    fn square_problem(b0: ExpPoly) -> MonicProblem {
        MonicProblem::new(vec![b0, ExpPoly::zero()])
    }

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn torsion_reduction_splits_negative_roots() {
        let p = square_problem(geometric(-2).neg());
        let (n, classes, plan) = torsion_reduce(&p);
        assert_eq!(n, 2);
        assert_eq!(plan.modulus, 2);
        assert_eq!(classes[0].coeff(0), &geometric(4).neg());
        assert_eq!(
            classes[1].coeff(0),
            &geometric(4).scale(&Scalar::from_integer(2))
        );
    }

    #[test]
    fn torsion_reduction_is_identity_without_torsion() {
        let p = square_problem(geometric(4).neg());
        let (n, classes, _) = torsion_reduce(&p);
        assert_eq!(n, 1);
        assert_eq!(&classes[0], &p);
    }

    #[test]
    fn torsion_reduction_handles_cube_roots_of_unity() {
        let root = RadicalRoot::root_of_unity(3, 1)
            .mul(&RadicalRoot::from_integer(2).unwrap());
        let p = square_problem(ExpPoly::geometric(root).neg());
        let (n, classes, _) = torsion_reduce(&p);
        assert_eq!(n, 3);
        assert_eq!(classes[0].coeff(0), &geometric(8).neg());
    }

    #[test]
    fn square_root_of_a_perfect_geometric_square() {
        let p = square_problem(geometric(4).neg());
        match solve_monic(&p, &cfg()) {
            SolveOutcome::Solved { solution, valid_from, .. } => {
                assert_eq!(solution, geometric(2));
                assert_eq!(valid_from, 0);
            }
            other => panic!("expected Solved, got {other:?}"),
        }
    }

    #[test]
    fn square_root_of_a_binomial_square() {
        // Y² = 4ⁿ + 2·2ⁿ + 1 = (2ⁿ+1)²
        let b0 = geometric(4)
            .add(&geometric(2).scale(&Scalar::from_integer(2)))
            .add(&constant(1))
            .neg();
        match solve_monic(&square_problem(b0), &cfg()) {
            SolveOutcome::Solved { solution, .. } => {
                assert_eq!(solution, geometric(2).add(&constant(1)));
            }
            other => panic!("expected Solved, got {other:?}"),
        }
    }

    #[test]
    fn twice_a_square_is_refuted() {
        let b0 = geometric(4).scale(&Scalar::from_integer(2)).neg();
        match solve_monic(&square_problem(b0), &cfg()) {
            SolveOutcome::Refuted { cert, .. } => {
                assert_eq!(cert.q, 3);
                assert_eq!(cert.residues.len() as u64, cert.period);
            }
            other => panic!("expected Refuted, got {other:?}"),
        }
    }

    #[test]
    fn powers_of_two_split_into_solved_and_refuted_classes() {
        // Y² = 2ⁿ: solvable exactly on even n
        let p = square_problem(geometric(2).neg());
        match solve_monic(&p, &cfg()) {
            SolveOutcome::Split { classes } => {
                assert_eq!(classes.len(), 2);
                assert_eq!(classes[0].0, Progression { modulus: 2, class: 0 });
                match &classes[0].1 {
                    SolveOutcome::Solved { solution, .. } => {
                        assert_eq!(solution, &geometric(2));
                    }
                    other => panic!("even class should solve, got {other:?}"),
                }
                match &classes[1].1 {
                    SolveOutcome::Refuted { cert, .. } => assert_eq!(cert.q, 3),
                    other => panic!("odd class should be refuted, got {other:?}"),
                }
            }
            other => panic!("expected Split, got {other:?}"),
        }
    }

    #[test]
    fn roots_recombine_through_torsion_classes() {
        // a = (−2)ⁿ, d = 3: the two classes solve separately and interleave
        // back to a itself
        let a = geometric(-2);
        let a3 = a.mul(&a).mul(&a);
        let p = MonicProblem::new(vec![a3.neg(), ExpPoly::zero(), ExpPoly::zero()]);
        match solve_monic(&p, &cfg()) {
            SolveOutcome::Solved { solution, .. } => {
                assert_eq!(solution.mul(&solution).mul(&solution), a3);
                assert_eq!(solution, a);
            }
            other => panic!("expected Solved, got {other:?}"),
        }
    }

    #[test]
    fn dth_root_of_geometric_squares_and_cubes() {
        match dth_root_sequence(&geometric(9), 2, &cfg()) {
            SolveOutcome::Solved { solution, .. } => assert_eq!(solution, geometric(3)),
            other => panic!("expected Solved, got {other:?}"),
        }
        // b = (2ⁿ+3ⁿ)³ → 2ⁿ+3ⁿ via the direct Laurent root
        let s = geometric(2).add(&geometric(3));
        let b = s.mul(&s).mul(&s);
        match dth_root_sequence(&b, 3, &cfg()) {
            SolveOutcome::Solved { solution, field_note, .. } => {
                assert_eq!(solution, s);
                assert_eq!(field_note.as_deref(), Some("direct Laurent root"));
            }
            other => panic!("expected Solved, got {other:?}"),
        }
    }

    #[test]
    fn dth_root_with_polynomial_part() {
        // b = n²·4ⁿ → n·2ⁿ
        let npoly = Poly::from_rationals(vec![
            BigRational::from_integer(BigInt::from(0)),
            BigRational::from_integer(BigInt::from(0)),
            BigRational::from_integer(BigInt::from(1)),
        ]);
        let b = ExpPoly::term(RadicalRoot::from_integer(4).unwrap(), npoly);
        let expected = ExpPoly::term(
            RadicalRoot::from_integer(2).unwrap(),
            Poly::from_rationals(vec![
                BigRational::from_integer(BigInt::from(0)),
                BigRational::from_integer(BigInt::from(1)),
            ]),
        );
        match dth_root_sequence(&b, 2, &cfg()) {
            SolveOutcome::Solved { solution, .. } => assert_eq!(solution, expected),
            other => panic!("expected Solved, got {other:?}"),
        }
    }

    #[test]
    fn quotients_divide_exactly() {
        // (6ⁿ+2ⁿ) ⊘ 2ⁿ = 3ⁿ+1
        let q = hadamard_quotient(&geometric(6).add(&geometric(2)), &geometric(2), &cfg());
        assert_eq!(q, Some(geometric(3).add(&constant(1))));
        // (4ⁿ−1) ⊘ (2ⁿ−1) = 2ⁿ+1
        let q = hadamard_quotient(
            &geometric(4).add(&constant(-1)),
            &geometric(2).add(&constant(-1)),
            &cfg(),
        );
        assert_eq!(q, Some(geometric(2).add(&constant(1))));
    }

    #[test]
    fn quotient_of_coprime_geometrics_has_rational_root() {
        let q = hadamard_quotient(&geometric(3), &geometric(2), &cfg()).unwrap();
        let three_halves =
            RadicalRoot::from_rational(&BigRational::new(BigInt::from(3), BigInt::from(2)))
                .unwrap();
        assert_eq!(q, ExpPoly::geometric(three_halves));
    }

    #[test]
    fn quotient_handles_torsion_by_interleaving() {
        // (4ⁿ−1) ⊘ ((−2)ⁿ−1) = (−2)ⁿ+1
        let a1 = geometric(-2).add(&constant(-1));
        let a2 = geometric(4).add(&constant(-1));
        let q = hadamard_quotient(&a2, &a1, &cfg()).unwrap();
        assert_eq!(q, geometric(-2).add(&constant(1)));
        assert_eq!(q.mul(&a1), a2);
    }

    #[test]
    fn general_solver_delegates_when_monic() {
        let general = GeneralProblem::new(vec![
            geometric(4).neg(),
            ExpPoly::zero(),
            constant(1),
        ]);
        let monic = square_problem(geometric(4).neg());
        assert_eq!(solve_general(&general, &cfg()), solve_monic(&monic, &cfg()));
    }

    #[test]
    fn linear_general_equation_divides_through() {
        // (2ⁿ)·Y − 6ⁿ = 0 → Y = 3ⁿ
        let p = GeneralProblem::new(vec![geometric(6).neg(), geometric(2)]);
        match solve_general(&p, &cfg()) {
            SolveOutcome::Solved { solution, .. } => assert_eq!(solution, geometric(3)),
            other => panic!("expected Solved, got {other:?}"),
        }
    }

    #[test]
    fn vanishing_leading_classes_are_vacuous() {
        // (1+(−1)ⁿ)·Y² − 2·(1+(−1)ⁿ)·4ⁿ = 0: the odd class says nothing,
        // the even class is Y² = 2·4ⁿ and is refuted
        let b2 = constant(1).add(&geometric(-1));
        let b0 = b2.mul(&geometric(4)).scale(&Scalar::from_integer(-2));
        let p = GeneralProblem::new(vec![b0, ExpPoly::zero(), b2]);
        match solve_general(&p, &cfg()) {
            SolveOutcome::Split { classes } => {
                assert_eq!(classes.len(), 2);
                match &classes[0].1 {
                    SolveOutcome::Refuted { cert, .. } => assert_eq!(cert.q, 3),
                    other => panic!("even class should be refuted, got {other:?}"),
                }
                match &classes[1].1 {
                    SolveOutcome::Solved { solution, .. } => {
                        assert!(solution.is_zero());
                    }
                    other => panic!("odd class should be vacuous, got {other:?}"),
                }
            }
            other => panic!("expected Split, got {other:?}"),
        }
    }

    #[test]
    fn verification_accepts_true_and_rejects_false_solutions() {
        let p = square_problem(geometric(4).neg());
        assert!(verify_solution(&p, &geometric(2), &cfg()).is_ok());
        let wrong = geometric(2).add(&constant(1));
        assert!(verify_solution(&p, &wrong, &cfg()).is_err());
        // and the expanded square does accept 2ⁿ+1
        let b0 = geometric(4)
            .add(&geometric(2).scale(&Scalar::from_integer(2)))
            .add(&constant(1))
            .neg();
        assert!(verify_solution(&square_problem(b0), &wrong, &cfg()).is_ok());
    }

    #[test]
    fn exponential_polynomials_print_readably() {
        assert_eq!(geometric(2).to_string(), "[2^1]^n");
        assert_eq!(ExpPoly::zero().to_string(), "0");
        assert_eq!(
            geometric(2).scale(&Scalar::from_integer(-3)).to_string(),
            "(-3)*[2^1]^n"
        );
        let npoly = Poly::from_rationals(vec![
            BigRational::from_integer(BigInt::from(1)),
            BigRational::from_integer(BigInt::from(1)),
        ]);
        let e = ExpPoly::term(RadicalRoot::from_integer(2).unwrap(), npoly);
        assert_eq!(e.to_string(), "[2^1]^n + [2^1]^n*n");
    }
}
