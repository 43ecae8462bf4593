//! Mod-q nonexistence certificates, Dirichlet prime search, and point
//! counting over small finite fields.
//!
//! A monic equation with recurrence-sequence coefficients reduces, for a
//! good prime q, to a q-periodic family of polynomials over F_q: the roots
//! map through a discrete-log table to elements of F_q*, the cyclotomic
//! coefficients through ω_M ↦ h^((q−1)/M), and the polynomial parts act
//! through n mod q. A rational solution at index n would reduce to a root
//! of the specialized polynomial, so residue classes whose polynomials have
//! no root over F_q certify that no solution exists for any n in them. The
//! certificate records everything needed to recheck that claim from scratch.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::arith::{
    crt_combine, is_prime_u64, lcm_u64, mul_mod, mult_order, next_prime, pow_mod, primitive_root,
};
use crate::laurent::{cyc_mod_q, LaurentError, YPoly};
use crate::scalar::Scalar;
use crate::sequences::ExpPoly;
use crate::solver::MonicProblem;
use crate::radical::RadicalRoot;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("prime {q} clashes with the data: {what}")]
    BadPrime { q: u64, what: String },
    #[error("inconsistent congruence system: {0}")]
    Inconsistent(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
}

impl From<LaurentError> for ObstructionError {
    fn from(e: LaurentError) -> Self {
        match e {
            LaurentError::BadPrime { q, what } => ObstructionError::BadPrime { q, what },
            other => ObstructionError::BadPrime { q: 0, what: other.to_string() },
        }
    }
}

fn bad(q: u64, what: impl Into<String>) -> ObstructionError {
    ObstructionError::BadPrime { q, what: what.into() }
}

/// A sound refutation: for every n in the listed residue classes mod
/// `period`, the monic polynomial specialized at n has no root over F_q —
/// hence no rational root exists at any such n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCert {
    pub q: u64,
    pub period: u64,
    pub residues: Vec<u64>,
    pub gamma_images: BTreeMap<String, u64>,
    pub claim: String,
}

/// Point-count experiment over F_q for a Y-polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LWReport {
    pub q: u64,
    pub n_q: u64,
    pub expected: u64,
    pub deviation: f64,
    pub no_root_fiber: Option<Vec<u64>>,
}

// ---------------------------------------------------------------------------
// reduction of problem data to F_q
// ---------------------------------------------------------------------------

/// Discrete logs to the smallest primitive root: log[v] = t with h^t = v.
struct DlogTable {
    q: u64,
    h: u64,
    log: Vec<i64>,
}

fn dlog_table(q: u64) -> DlogTable {
    let h = primitive_root(q);
    let mut log = vec![-1i64; q as usize];
    let mut v = 1u64;
    for t in 0..(q - 1) {
        log[v as usize] = t as i64;
        v = mul_mod(v, h, q);
    }
    DlogTable { q, h, log }
}

/// Exponent t with h^t = image of ∏ p^(e_p); fractional exponents e = a/b
/// need b | q−1 and b | dlog(p), the canonical aligned b-th root.
fn radical_exponent(
    rads: &BTreeMap<u64, Rational64>,
    tb: &DlogTable,
) -> Result<u64, ObstructionError> {
    let q = tb.q;
    let qm1 = q - 1;
    let mut acc: u64 = 0;
    for (p, e) in rads {
        if p % q == 0 {
            return Err(bad(q, format!("q divides radical base {p}")));
        }
        let kp = tb.log[(p % q) as usize] as u64;
        let a = *e.numer();
        let b = *e.denom() as u64;
        if b > 1 {
            if qm1 % b != 0 {
                return Err(bad(q, format!("group order {qm1} not divisible by {b}")));
            }
            if kp % b != 0 {
                return Err(bad(q, format!("{p} has no aligned {b}-th root mod {q}")));
            }
        }
        let step = ((kp / b) as i128 * a as i128).rem_euclid(qm1 as i128) as u64;
        acc = (acc + step) % qm1;
    }
    Ok(acc)
}

fn root_exponent(root: &RadicalRoot, tb: &DlogTable) -> Result<u64, ObstructionError> {
    let q = tb.q;
    let qm1 = q - 1;
    let (j, m) = root.torsion();
    if qm1 % m != 0 {
        return Err(bad(q, format!("q is not 1 mod torsion order {m}")));
    }
    let torsion = mul_mod(j % m, qm1 / m, qm1.max(1));
    let radical = radical_exponent(root.radicals(), tb)?;
    Ok((torsion + radical) % qm1.max(1))
}

/// Image of a scalar: Σ over radical monomials of img(monomial)·img(cyclotomic).
fn scalar_image(s: &Scalar, tb: &DlogTable) -> Result<u64, ObstructionError> {
    let q = tb.q;
    let mut acc = 0u64;
    for (mono, c) in s.terms() {
        let e = radical_exponent(mono.exponents(), tb)?;
        let img = pow_mod(tb.h, e, q);
        let cv = cyc_mod_q(c, q)?;
        acc = (acc + mul_mod(img, cv, q)) % q;
    }
    Ok(acc)
}

/// The whole problem pushed into F_q: per coefficient, a list of
/// (root image, polynomial part mod q); plus the profile period.
struct ReducedProblem {
    q: u64,
    period: u64,
    images: BTreeMap<String, u64>,
    terms: Vec<Vec<(u64, Vec<u64>)>>,
}

fn reduce_problem(coeffs: &[ExpPoly], q: u64) -> Result<ReducedProblem, ObstructionError> {
    if !is_prime_u64(q) {
        return Err(bad(q, "not prime"));
    }
    let tb = dlog_table(q);
    let mut images = BTreeMap::new();
    let mut period = 1u64;
    let mut nonconst = false;
    let mut terms = Vec::with_capacity(coeffs.len());
    for b in coeffs {
        let mut row = Vec::new();
        for (root, poly) in b.terms() {
            let e = root_exponent(root, &tb)?;
            let img = pow_mod(tb.h, e, q);
            images.insert(root.to_string(), img);
            period = lcm_u64(period, mult_order(img, q));
            let pv = poly
                .coeffs()
                .iter()
                .map(|s| scalar_image(s, &tb))
                .collect::<Result<Vec<u64>, _>>()?;
            if pv.iter().skip(1).any(|v| *v != 0) {
                nonconst = true;
            }
            row.push((img, pv));
        }
        terms.push(row);
    }
    // the polynomial parts are q-periodic in n; the exponentials are not
    if nonconst {
        period = lcm_u64(period, q);
    }
    Ok(ReducedProblem { q, period, images, terms })
}

impl ReducedProblem {
    fn coeff_value(&self, j: usize, n: u64) -> u64 {
        let q = self.q;
        let mut acc = 0u64;
        for (img, pv) in &self.terms[j] {
            let x = n % q;
            let mut a = 0u64;
            for c in pv.iter().rev() {
                a = (mul_mod(a, x, q) + c) % q;
            }
            acc = (acc + mul_mod(a, pow_mod(*img, n, q), q)) % q;
        }
        acc
    }

    fn has_root(&self, n: u64) -> bool {
        let q = self.q;
        let d = self.terms.len();
        let vals: Vec<u64> = (0..d).map(|j| self.coeff_value(j, n)).collect();
        for y in 0..q {
            let mut acc = 1u64; // monic leading coefficient
            for j in (0..d).rev() {
                acc = (mul_mod(acc, y, q) + vals[j]) % q;
            }
            if acc == 0 {
                return true;
            }
        }
        false
    }
}

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

/// For each residue n in 0…P−1, does the specialized polynomial have a root
/// over F_q? P is the profile period (map length).
pub fn mod_q_profile(
    p: &MonicProblem,
    q: u64,
) -> Result<BTreeMap<u64, bool>, ObstructionError> {
    let rp = reduce_problem(p.coeffs(), q)?;
    Ok((0..rp.period).map(|n| (n, rp.has_root(n))).collect())
}

/// Probe a single prime: reduce there and return a certificate when the
/// no-root residue set is nonempty. None when the prime clashes with the
/// problem data, the period exceeds `period_max`, or every residue has a
/// root.
pub fn obstruction_at_prime(
    p: &MonicProblem,
    q: u64,
    period_max: u64,
) -> Option<ObstructionCert> {
    let rp = reduce_problem(p.coeffs(), q).ok()?;
    if rp.period > period_max {
        return None;
    }
    let residues: Vec<u64> = (0..rp.period).filter(|n| !rp.has_root(*n)).collect();
    if residues.is_empty() {
        return None;
    }
    let cert = ObstructionCert {
        q,
        period: rp.period,
        residues,
        gamma_images: rp.images,
        claim: format!(
            "for every n in the listed residue classes mod {}, the degree-{} \
             monic specialization has no root over F_{}",
            rp.period,
            p.degree(),
            q
        ),
    };
    debug_assert!(verify_cert(&cert, p));
    Some(cert)
}

/// Scan primes q ≤ q_max in increasing order, skipping clashes, and return
/// the first certificate with a nonempty no-root residue set.
pub fn find_obstruction(
    p: &MonicProblem,
    q_max: u64,
    period_max: u64,
) -> Option<ObstructionCert> {
    let mut q = 2;
    while q <= q_max {
        if let Some(cert) = obstruction_at_prime(p, q, period_max) {
            return Some(cert);
        }
        q = next_prime(q);
    }
    None
}

/// Recheck a certificate from scratch: the prime screen, the period, the
/// recorded images, and every claimed residue.
pub fn verify_cert(cert: &ObstructionCert, p: &MonicProblem) -> bool {
    let rp = match reduce_problem(p.coeffs(), cert.q) {
        Ok(r) => r,
        Err(_) => return false,
    };
    if rp.period != cert.period || rp.images != cert.gamma_images {
        return false;
    }
    if cert.residues.is_empty() {
        return false;
    }
    cert.residues.iter().all(|r| *r < cert.period && !rp.has_root(*r))
}

/// Smallest prime satisfying all positive congruences (modulus, residue,
/// false) and violating all negated ones (modulus, residue, true).
pub fn dirichlet_prime_search(spec: &[(u64, u64, bool)]) -> Result<u64, ObstructionError> {
    let mut modulus = 1u64;
    let mut residue = 0u64;
    for (m, r, neg) in spec {
        if *neg {
            continue;
        }
        match crt_combine(modulus, residue, *m, *r) {
            Some((nm, nr)) => {
                modulus = nm;
                residue = nr;
            }
            None => {
                return Err(ObstructionError::Inconsistent(format!(
                    "x ≡ {residue} (mod {modulus}) clashes with x ≡ {r} (mod {m})"
                )))
            }
        }
    }
    for (m, r, neg) in spec {
        if !neg {
            continue;
        }
        if modulus % m == 0 && residue % m == r % m {
            return Err(ObstructionError::Inconsistent(format!(
                "negated congruence x ≢ {r} (mod {m}) is implied by the positive ones"
            )));
        }
    }
    let mut p = residue;
    let bound = 100_000_000u64;
    while p <= bound {
        if p >= 2
            && is_prime_u64(p)
            && spec.iter().all(|(m, r, neg)| !neg || p % m != r % m)
        {
            return Ok(p);
        }
        p += modulus;
    }
    Err(ObstructionError::BudgetExceeded(format!(
        "no prime ≡ {residue} (mod {modulus}) below {bound}"
    )))
}

/// Exhaustive point count of T = 0 over F_q: fibers run over the variables
/// T actually involves (F_q* where negative exponents occur), and every
/// Y-root is counted. Also reports the first all-nonzero fiber with no
/// Y-root, re-verified.
pub fn langweil_count(t: &YPoly, q: u64, budget: u64) -> Result<LWReport, ObstructionError> {
    if !is_prime_u64(q) {
        return Err(bad(q, "not prime"));
    }
    let nvars = t.nvars();
    let mut involved = vec![false; nvars];
    let mut negative = vec![false; nvars];
    for j in 0..=t.degree() {
        if let Some(bx) = t.coeff(j).exponent_box() {
            for (i, (lo, hi)) in bx.iter().enumerate() {
                if *lo != 0 || *hi != 0 {
                    involved[i] = true;
                }
                if *lo < 0 {
                    negative[i] = true;
                }
            }
        }
    }
    let vars: Vec<usize> = (0..nvars).filter(|i| involved[*i]).collect();
    let nx = vars.len() as u32;
    let mut fibers = 1u64;
    for i in &vars {
        fibers = fibers.saturating_mul(if negative[*i] { q - 1 } else { q });
    }
    let ops = fibers.saturating_mul(q).saturating_mul(t.degree() as u64 + 1);
    if ops > budget {
        return Err(ObstructionError::BudgetExceeded(format!(
            "{ops} operations exceed the budget {budget}"
        )));
    }

    let starts: Vec<u64> = vars.iter().map(|i| if negative[*i] { 1 } else { 0 }).collect();
    let mut idx = starts.clone();
    let mut assignments = vec![1u64; nvars];
    let mut n_q = 0u64;
    let mut fiber: Option<Vec<u64>> = None;
    let count_roots = |assignments: &[u64]| -> Result<u64, ObstructionError> {
        let coeffs = t.reduce_mod_q(q, assignments)?;
        let mut roots = 0;
        for y in 0..q {
            let mut acc = 0u64;
            for c in coeffs.iter().rev() {
                acc = (mul_mod(acc, y, q) + c) % q;
            }
            if acc == 0 {
                roots += 1;
            }
        }
        Ok(roots)
    };
    'fibers: loop {
        for (k, i) in vars.iter().enumerate() {
            assignments[*i] = idx[k];
        }
        let roots = count_roots(&assignments)?;
        n_q += roots;
        if fiber.is_none() && roots == 0 && idx.iter().all(|v| *v != 0) {
            fiber = Some(idx.clone());
        }
        let mut k = 0;
        loop {
            if k == vars.len() {
                break 'fibers;
            }
            idx[k] += 1;
            if idx[k] < q {
                break;
            }
            idx[k] = starts[k];
            k += 1;
        }
    }
    if let Some(f) = &fiber {
        // re-verify the reported fiber independently of the sweep
        for (k, i) in vars.iter().enumerate() {
            assignments[*i] = f[k];
        }
        debug_assert_eq!(count_roots(&assignments)?, 0);
    }
    let expected = q.pow(nx);
    let deviation = (n_q as f64 - expected as f64).abs() / (q as f64).powf(nx as f64 - 0.5);
    Ok(LWReport { q, n_q, expected, deviation, no_root_fiber: fiber })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;
    use crate::sequences::Poly;
    use num_rational::BigRational;

    fn geometric(k: i64) -> ExpPoly {
        ExpPoly::geometric(RadicalRoot::from_integer(k).unwrap())
    }

    fn constant(k: i64) -> ExpPoly {
        ExpPoly::constant(Scalar::from_integer(k))
    }

    /// Y^2 + b0 = 0 as a monic problem.
    fn square_problem(b0: ExpPoly) -> MonicProblem {
        MonicProblem::new(vec![b0, ExpPoly::zero()])
    }

    #[test]
    fn constant_two_is_never_a_square_mod_five() {
        let p = square_problem(constant(-2));
        let profile = mod_q_profile(&p, 5).unwrap();
        assert_eq!(profile.len(), 1);
        assert!(!profile[&0]);
    }

    #[test]
    fn powers_of_four_are_always_squares_mod_five() {
        let p = square_problem(geometric(4).neg());
        let profile = mod_q_profile(&p, 5).unwrap();
        assert_eq!(profile.len(), 2);
        assert!(profile.values().all(|v| *v));
    }

    #[test]
    fn powers_of_two_split_mod_five() {
        // 2ⁿ mod 5 cycles (1,2,4,3); squares mod 5 are {0,1,4}
        let p = square_problem(geometric(2).neg());
        let profile = mod_q_profile(&p, 5).unwrap();
        assert_eq!(profile.len(), 4);
        assert!(profile[&0] && profile[&2]);
        assert!(!profile[&1] && !profile[&3]);
    }

    #[test]
    fn obstruction_for_twice_a_square() {
        // Y² = 2·4ⁿ: 2·4ⁿ ≡ 2 (mod 3) and 2 is not a square mod 3
        let b0 = geometric(4).scale(&Scalar::from_integer(2)).neg();
        let p = square_problem(b0);
        let cert = find_obstruction(&p, 50, 2000).expect("expected a certificate");
        assert_eq!(cert.q, 3);
        assert_eq!(cert.period, 1);
        assert_eq!(cert.residues, vec![0]);
        assert!(verify_cert(&cert, &p));
        // the spec's illustrative prime also certifies: both classes mod 5
        let profile5 = mod_q_profile(&p, 5).unwrap();
        assert!(profile5.values().all(|v| !*v));
    }

    #[test]
    fn no_obstruction_for_perfect_squares() {
        let p = square_problem(geometric(4).neg());
        assert!(find_obstruction(&p, 50, 2000).is_none());
        // (2ⁿ+1)² = 4ⁿ + 2·2ⁿ + 1 likewise admits no certificate
        let b0 = geometric(4)
            .add(&geometric(2).scale(&Scalar::from_integer(2)))
            .add(&constant(1))
            .neg();
        let p2 = square_problem(b0);
        assert!(find_obstruction(&p2, 50, 2000).is_none());
    }

    #[test]
    fn obstruction_for_powers_of_two() {
        // Y² = 2ⁿ: mod 3, 2ⁿ alternates 1, 2 and 2 is not a square
        let p = square_problem(geometric(2).neg());
        let cert = find_obstruction(&p, 50, 2000).expect("expected a certificate");
        assert_eq!(cert.q, 3);
        assert_eq!(cert.period, 2);
        assert_eq!(cert.residues, vec![1]);
        assert!(verify_cert(&cert, &p));
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let p = square_problem(geometric(2).neg());
        let cert = find_obstruction(&p, 50, 2000).unwrap();
        let mut bigger = cert.clone();
        bigger.residues.insert(0, 0); // class 0 has a root
        assert!(!verify_cert(&bigger, &p));
        let mut wrong_period = cert.clone();
        wrong_period.period += 1;
        assert!(!verify_cert(&wrong_period, &p));
        let mut empty = cert.clone();
        empty.residues.clear();
        assert!(!verify_cert(&empty, &p));
        // a prime dividing a coefficient denominator fails the screen
        let half = ExpPoly::constant(Scalar::from_rational(BigRational::new(
            1.into(),
            2.into(),
        )));
        let p_half = square_problem(half);
        let mut wrong_q = cert.clone();
        wrong_q.q = 2;
        assert!(!verify_cert(&wrong_q, &p_half));
    }

    #[test]
    fn polynomial_parts_extend_the_period() {
        // Y² = n·2ⁿ: the polynomial factor n forces q into the period
        let n_poly = Poly::from_rationals(vec![
            BigRational::new(0.into(), 1.into()),
            BigRational::new(1.into(), 1.into()),
        ]);
        let b0 = ExpPoly::term(RadicalRoot::from_integer(2).unwrap(), n_poly).neg();
        let p = square_problem(b0);
        let rp = reduce_problem(p.coeffs(), 5).unwrap();
        assert_eq!(rp.period, 20); // lcm(ord(2 mod 5) = 4, q = 5)
    }

    #[test]
    fn fractional_exponents_reduce_through_dlogs() {
        // Y² = (√2)ⁿ·… : the root √2 maps to an aligned square root when
        // dlog(2) is even; mod 7, 2 = 3² so √2 ↦ ±3 canonically aligned
        let root = RadicalRoot::new(0, 1, [(2u64, Rational64::new(1, 2))].into());
        let p = square_problem(ExpPoly::geometric(root).neg());
        let rp = reduce_problem(p.coeffs(), 7);
        let rp = rp.expect("7 ≡ 1 mod 2 and dlog_3(2) = 2 is even");
        let img = rp.images.values().next().copied().unwrap();
        assert_eq!(mul_mod(img, img, 7), 2);
        // mod 5, dlog_2(2) = 1 is odd: the prime is skipped
        assert!(reduce_problem(p.coeffs(), 5).is_err());
    }

    #[test]
    fn dirichlet_search_matches_known_primes() {
        assert_eq!(dirichlet_prime_search(&[(4, 1, false)]).unwrap(), 5);
        assert_eq!(
            dirichlet_prime_search(&[(6, 1, false), (12, 1, true)]).unwrap(),
            7
        );
        assert!(matches!(
            dirichlet_prime_search(&[(3, 1, false), (3, 2, false)]),
            Err(ObstructionError::Inconsistent(_))
        ));
        assert!(matches!(
            dirichlet_prime_search(&[(6, 1, false), (3, 1, true)]),
            Err(ObstructionError::Inconsistent(_))
        ));
    }

    #[test]
    fn graph_counts_exactly_q_points() {
        // T = Y − X1 over (X1, Y)
        let t = YPoly::monic(vec![LaurentPoly::var(2, 1).neg()]);
        let report = langweil_count(&t, 7, 1_000_000).unwrap();
        assert_eq!(report.n_q, 7);
        assert_eq!(report.expected, 7);
        assert_eq!(report.deviation, 0.0);
        assert!(report.no_root_fiber.is_none());
    }

    #[test]
    fn elliptic_counts_within_hasse_bound() {
        // T = Y² − X1³ + X1 mod 7
        let x1 = LaurentPoly::var(2, 1);
        let f = x1.pow(3).sub(&x1);
        let t = YPoly::monic(vec![f.neg(), LaurentPoly::zero(2)]);
        let report = langweil_count(&t, 7, 1_000_000).unwrap();
        let diff = (report.n_q as f64 - 7.0).abs();
        assert!(diff <= 2.0 * (7.0f64).sqrt(), "N_7 = {}", report.n_q);
    }

    #[test]
    fn constant_nonresidue_reports_empty_fiber() {
        // T = Y² − 2 mod 5: no x variables, and no y-root at all
        let t = YPoly::monic(vec![
        LaurentPoly::from_integer(2, -2),
            LaurentPoly::zero(2),
        ]);
        let report = langweil_count(&t, 5, 1_000_000).unwrap();
        assert_eq!(report.n_q, 0);
        assert_eq!(report.expected, 1);
        assert_eq!(report.no_root_fiber, Some(vec![]));
    }

    #[test]
    fn budget_is_enforced() {
        let x1 = LaurentPoly::var(2, 1);
        let t = YPoly::monic(vec![x1.neg(), LaurentPoly::zero(2)]);
        assert!(matches!(
            langweil_count(&t, 101, 10),
            Err(ObstructionError::BudgetExceeded(_))
        ));
    }
}
