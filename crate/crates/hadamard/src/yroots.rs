//! Laurent-polynomial roots of monic Y-polynomials.
//!
//! Given S = Y^d + Σ f_j(X)·Y^j, find every Laurent polynomial P with
//! S(X, P) = 0. The search is layered: linear and quadratic equations are
//! solved in closed form (discriminant square roots in the Laurent ring);
//! higher degrees go through an exponent-box bound, an injective Kronecker
//! substitution to one variable, a seeded regular rational specialization,
//! exact candidate roots in the cyclotomic field, and a Newton lift of each
//! candidate back to a Laurent polynomial. Every candidate is verified
//! exactly before it is returned, so the output is always sound; the
//! candidate search is complete for rational and (root of unity)·rational
//! values, the class the rest of the stack produces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{divisors, lcm_u64};
use crate::cyclotomic::CyclotomicNumber;
use crate::laurent::{LaurentPoly, YPoly};
use crate::ratpoly;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum YError {
    #[error("no regular specialization point found after {0} attempts")]
    NoRegularPoint(u32),
    #[error("root box too wide for the series lift ({0} coefficients)")]
    WidthExceeded(usize),
}

/// Knobs for the specialization search. The seed fixes every random choice.
#[derive(Clone, Debug)]
pub struct YConfig {
    pub retries: u32,
    pub seed: u64,
    pub guard: usize,
    /// Upper bound on the series precision of the Newton lift; wider
    /// problems are reported as undecided instead of ground through.
    pub max_width: usize,
}

impl Default for YConfig {
    fn default() -> Self {
        Self { retries: 8, seed: 0x4841_4441, guard: 4, max_width: 150 }
    }
}

/// All Laurent-polynomial roots of a monic Y-polynomial, exactly verified,
/// in a deterministic order.
pub fn y_roots(s: &YPoly, cfg: &YConfig) -> Result<Vec<LaurentPoly>, YError> {
    assert!(s.is_monic(), "y_roots expects a monic polynomial");
    let mut out = roots_recursive(s, cfg, 0)?;
    out.sort_by_key(|p| p.to_string());
    out.dedup();
    Ok(out)
}

fn roots_recursive(s: &YPoly, cfg: &YConfig, depth: usize) -> Result<Vec<LaurentPoly>, YError> {
    let d = s.degree();
    let nvars = s.nvars();
    if d == 0 {
        return Ok(Vec::new());
    }
    if d == 1 {
        return Ok(vec![s.coeff(0).neg()]);
    }
    // pure-power equations Y^d = g resolve through the Laurent d-th root,
    // which is complete for the coefficient class the stack produces; the
    // remaining roots are its multiples by d-th roots of unity
    if (1..d).all(|j| s.coeff(j).is_zero()) {
        let g = s.coeff(0).neg();
        let mut out = Vec::new();
        if let Some(r) = g.dth_root(d as u32) {
            for j in 0..d as u64 {
                let zeta = CyclotomicNumber::root_of_unity(d as u64, j);
                let cand = r.scale(&zeta);
                if s.eval_y(&cand).is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
        return Ok(out);
    }
    let mut found: Vec<LaurentPoly> = Vec::new();
    if d == 2 {
        if let Some(roots) = quadratic_roots(s) {
            return Ok(roots);
        }
    }
    let general = general_roots(s, cfg);
    let first = match general {
        Ok(roots) => roots,
        Err(e @ YError::WidthExceeded(_)) => return Err(e),
        Err(e) => {
            if depth >= 8 {
                return Err(e);
            }
            // repeated factors block every specialization; the roots shared
            // with the Y-derivative are still reachable
            derivative_candidates(s, cfg, depth)?
        }
    };
    for p in first {
        if !found.contains(&p) && s.eval_y(&p).is_zero() {
            // peel the factor and keep searching in the quotient
            let quotient = deflate(s, &p);
            found.push(p);
            if quotient.degree() >= 1 {
                if let Ok(rest) = roots_recursive(&quotient, cfg, depth + 1) {
                    for r in rest {
                        if !found.contains(&r) && s.eval_y(&r).is_zero() {
                            found.push(r);
                        }
                    }
                }
            }
        }
    }
    let _ = nvars;
    Ok(found)
}

/// Quadratic closed form when the discriminant has a Laurent square root.
/// None means "undecided here", not "no roots".
fn quadratic_roots(s: &YPoly) -> Option<Vec<LaurentPoly>> {
    let f1 = s.coeff(1);
    let f0 = s.coeff(0);
    let disc = f1.mul(f1).sub(&f0.scale(&CyclotomicNumber::from_integer(4)));
    let r = disc.dth_root(2)?;
    let half = CyclotomicNumber::from_rational(BigRational::new(1.into(), 2.into()));
    let a = f1.neg().add(&r).scale(&half);
    let b = f1.neg().sub(&r).scale(&half);
    debug_assert!(s.eval_y(&a).is_zero());
    debug_assert!(s.eval_y(&b).is_zero());
    let mut out = vec![a];
    if out[0] != b {
        out.push(b);
    }
    Some(out)
}

/// Roots reachable through the Y-derivative (repeated roots of s).
fn derivative_candidates(
    s: &YPoly,
    cfg: &YConfig,
    depth: usize,
) -> Result<Vec<LaurentPoly>, YError> {
    let d = s.degree();
    let inv_d = CyclotomicNumber::from_integer(d as i64).inverse();
    let mut coeffs = Vec::with_capacity(d);
    for j in 1..=d {
        let scaled = s.coeff(j).scale(&CyclotomicNumber::from_integer(j as i64).mul(&inv_d));
        coeffs.push(scaled);
    }
    let ds = YPoly::new(coeffs);
    if !ds.is_monic() {
        return Ok(Vec::new());
    }
    let candidates = roots_recursive(&ds, cfg, depth + 1)?;
    Ok(candidates.into_iter().filter(|p| s.eval_y(p).is_zero()).collect())
}

/// Exact quotient s / (Y − p) for a verified root p.
fn deflate(s: &YPoly, p: &LaurentPoly) -> YPoly {
    let d = s.degree();
    let mut quot = vec![LaurentPoly::zero(s.nvars()); d];
    let mut carry = s.coeff(d).clone();
    for j in (0..d).rev() {
        quot[j] = carry.clone();
        carry = s.coeff(j).add(&carry.mul(p));
    }
    debug_assert!(carry.is_zero(), "deflation needs an exact root");
    YPoly::new(quot)
}

// ---------------------------------------------------------------------------
// the general path: box → Kronecker → specialize → lift → verify
// ---------------------------------------------------------------------------

fn general_roots(s: &YPoly, cfg: &YConfig) -> Result<Vec<LaurentPoly>, YError> {
    let d = s.degree();
    let nvars = s.nvars();

    // exponent-box bound for any root, per variable
    let mut root_lo = vec![i64::MAX; nvars];
    let mut root_hi = vec![i64::MIN; nvars];
    let mut any = false;
    for j in 0..d {
        if let Some(bx) = s.coeff(j).exponent_box() {
            any = true;
            let den = (d - j) as i64;
            for (i, (lo, hi)) in bx.iter().enumerate() {
                root_lo[i] = root_lo[i].min(div_floor(*lo, den) - 1);
                root_hi[i] = root_hi[i].max(div_ceil(*hi, den) + 1);
            }
        }
    }
    if !any {
        // S = Y^d: the only root is 0
        return Ok(vec![LaurentPoly::zero(nvars)]);
    }
    root_lo[0] = root_lo[0].max(0);
    root_hi[0] = root_hi[0].max(0);
    for i in 0..nvars {
        root_lo[i] = root_lo[i].min(root_hi[i]);
    }

    // the Kronecker radices must keep every coefficient support injective too
    let mut lo = root_lo.clone();
    let mut hi = root_hi.clone();
    for j in 0..d {
        if let Some(bx) = s.coeff(j).exponent_box() {
            for (i, (l, h)) in bx.iter().enumerate() {
                lo[i] = lo[i].min(*l);
                hi[i] = hi[i].max(*h);
            }
        }
    }
    let mut radices = vec![0i64; nvars];
    let mut m = 1i64;
    for i in 0..nvars {
        radices[i] = m;
        let width = hi[i] - lo[i] + 1;
        m = m.checked_mul(width).expect("Kronecker radix overflow");
    }
    let kron = |f: &LaurentPoly| -> Vec<(i64, CyclotomicNumber)> {
        let mut terms: BTreeMap<i64, CyclotomicNumber> = BTreeMap::new();
        for (mono, c) in f.terms() {
            let e: i64 = mono.exps().iter().zip(&radices).map(|(x, r)| x * r).sum();
            let entry = terms.entry(e).or_insert_with(CyclotomicNumber::zero);
            *entry = entry.add(c);
        }
        terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    };
    let coeffs_u: Vec<Vec<(i64, CyclotomicNumber)>> = (0..=d).map(|j| kron(s.coeff(j))).collect();

    // series precision: enough to cover the whole root box plus a guard
    let t_lo: i64 = root_lo.iter().zip(&radices).map(|(l, r)| l * r).sum();
    let t_hi: i64 = root_hi.iter().zip(&radices).map(|(h, r)| h * r).sum();
    let span = (t_hi - t_lo) as usize;
    let w = span + 1 + cfg.guard;
    if w > cfg.max_width {
        return Err(YError::WidthExceeded(w));
    }

    let conductor = data_conductor(s, d);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.retries {
        let t0_int: i64 = rng.gen_range(2..12);
        let t0 = CyclotomicNumber::from_integer(t0_int);
        // specialized polynomial in Y over the cyclotomic field
        let spec: Vec<CyclotomicNumber> = coeffs_u
            .iter()
            .map(|terms| eval_u_terms(terms, &t0))
            .collect();
        if !is_squarefree(&spec) {
            continue;
        }
        let candidates = field_roots(&spec, conductor);
        let mut out = Vec::new();
        for y0 in candidates {
            if let Some(root) =
                lift_candidate(s, &coeffs_u, &t0, &y0, t_lo, span, w, &radices, &lo, &hi)
            {
                if !out.contains(&root) {
                    out.push(root);
                }
            }
        }
        return Ok(out);
    }
    Err(YError::NoRegularPoint(cfg.retries))
}

fn div_floor(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

/// Conductor budget for root-of-unity reconstruction: the data's own
/// torsion orders widened by the small orders a d-th root can introduce.
fn data_conductor(s: &YPoly, d: usize) -> u64 {
    let mut m = 24;
    for j in 0..=s.degree() {
        for (_, c) in s.coeff(j).terms() {
            m = lcm_u64(m, c.normalize().order());
        }
    }
    for k in 1..=(2 * d as u64) {
        m = lcm_u64(m, k);
    }
    m.min(10_000)
}

fn eval_u_terms(terms: &[(i64, CyclotomicNumber)], t0: &CyclotomicNumber) -> CyclotomicNumber {
    let mut acc = CyclotomicNumber::zero();
    for (e, c) in terms {
        let p = t0.pow(e.unsigned_abs());
        let p = if *e >= 0 { p } else { p.inverse() };
        acc = acc.add(&c.mul(&p));
    }
    acc
}

// ---------------------------------------------------------------------------
// candidate roots of a univariate polynomial over the cyclotomic field
// ---------------------------------------------------------------------------

fn is_squarefree(p: &[CyclotomicNumber]) -> bool {
    let dp: Vec<CyclotomicNumber> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&BigRational::from_integer(BigInt::from(i))))
        .collect();
    let g = kgcd(p, &dp);
    kdeg(&g) == Some(0)
}

/// Exact roots within the supported class: rationals (complete) and
/// (root of unity)·rational reconstructed from float approximations.
fn field_roots(p: &[CyclotomicNumber], conductor: u64) -> Vec<CyclotomicNumber> {
    let mut out: Vec<CyclotomicNumber> = Vec::new();
    let mut push = |c: CyclotomicNumber| {
        if keval(p, &c).is_zero() && !out.contains(&c) {
            out.push(c);
        }
    };
    // complete rational search when the coefficients allow it
    if p.iter().all(|c| c.is_rational()) {
        let rp: Vec<BigRational> = p.iter().map(|c| c.as_rational().unwrap()).collect();
        if let Some(roots) = ratpoly::rational_roots(&rp) {
            for r in roots {
                push(CyclotomicNumber::from_rational(r));
            }
        }
    }
    // float roots, reconstructed as ω_k^j · ρ and verified exactly
    let approx: Vec<(f64, f64)> = p.iter().map(|c| c.complex_approx()).collect();
    let float_roots = durand_kerner(&approx);
    let ks = divisors(conductor);
    for (re, im) in float_roots {
        let modulus = (re * re + im * im).sqrt();
        if !modulus.is_finite() || modulus < 1e-12 {
            push(CyclotomicNumber::zero());
            continue;
        }
        let rho = match cf_rational(modulus, 1_000_000_000) {
            Some(r) => r,
            None => continue,
        };
        let theta = im.atan2(re) / (2.0 * std::f64::consts::PI);
        let theta = if theta < 0.0 { theta + 1.0 } else { theta };
        for k in &ks {
            let j = (theta * *k as f64).round();
            if (theta - j / *k as f64).abs() > 1e-7 {
                continue;
            }
            let j = (j as i64).rem_euclid(*k as i64) as u64;
            let cand = CyclotomicNumber::root_of_unity(*k, j).scale(&rho);
            push(cand);
            break;
        }
    }
    out
}

/// Continued-fraction reconstruction of a nonnegative float as a rational
/// with bounded denominator.
fn cf_rational(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() || x < 0.0 {
        return None;
    }
    let (mut h0, mut h1) = (BigInt::one(), BigInt::from(x.floor() as i64));
    let (mut k0, mut k1) = (BigInt::zero(), BigInt::one());
    let mut frac = x - x.floor();
    for _ in 0..40 {
        let approx = BigRational::new(h1.clone(), k1.clone());
        let err = (rational_f64(&approx) - x).abs();
        if err <= 1e-9 * x.max(1.0) {
            return Some(approx);
        }
        if frac.abs() < 1e-12 {
            break;
        }
        let next = 1.0 / frac;
        let a = next.floor();
        frac = next - a;
        let a = BigInt::from(a as i64);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
    }
    let approx = BigRational::new(h1, k1);
    if (rational_f64(&approx) - x).abs() <= 1e-9 * x.max(1.0) {
        Some(approx)
    } else {
        None
    }
}

fn rational_f64(r: &BigRational) -> f64 {
    crate::cyclotomic::rational_to_f64(r)
}

/// Weierstrass simultaneous iteration for all complex roots.
fn durand_kerner(coeffs: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = coeffs[d];
    let monic: Vec<(f64, f64)> = coeffs.iter().map(|c| c_div(*c, lead)).collect();
    let mut roots: Vec<(f64, f64)> = (0..d)
        .map(|i| c_pow((0.4, 0.9), i as u32 + 1))
        .collect();
    for _ in 0..200 {
        let mut maxstep = 0.0f64;
        for i in 0..d {
            let num = c_horner(&monic, roots[i]);
            let mut den = (1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den = c_mul(den, c_sub(roots[i], roots[j]));
                }
            }
            if c_abs(den) < 1e-300 {
                continue;
            }
            let step = c_div(num, den);
            roots[i] = c_sub(roots[i], step);
            maxstep = maxstep.max(c_abs(step));
        }
        if maxstep < 1e-13 {
            break;
        }
    }
    roots
}

fn c_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn c_sub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 - b.0, a.1 - b.1)
}

fn c_div(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let n = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
}

fn c_abs(a: (f64, f64)) -> f64 {
    (a.0 * a.0 + a.1 * a.1).sqrt()
}

fn c_pow(a: (f64, f64), e: u32) -> (f64, f64) {
    let mut acc = (1.0, 0.0);
    for _ in 0..e {
        acc = c_mul(acc, a);
    }
    acc
}

fn c_horner(p: &[(f64, f64)], x: (f64, f64)) -> (f64, f64) {
    let mut acc = (0.0, 0.0);
    for c in p.iter().rev() {
        acc = c_mul(acc, x);
        acc = (acc.0 + c.0, acc.1 + c.1);
    }
    acc
}

// ---------------------------------------------------------------------------
// Newton lift of one candidate back to a Laurent polynomial
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn lift_candidate(
    s: &YPoly,
    coeffs_u: &[Vec<(i64, CyclotomicNumber)>],
    t0: &CyclotomicNumber,
    y0: &CyclotomicNumber,
    t_lo: i64,
    span: usize,
    w: usize,
    radices: &[i64],
    lo: &[i64],
    hi: &[i64],
) -> Option<LaurentPoly> {
    let d = s.degree();
    // coefficient series f_j(t0 + v) mod v^w
    let fser: Vec<Vec<CyclotomicNumber>> =
        coeffs_u.iter().map(|terms| u_terms_series(terms, t0, w)).collect();
    let dser: Vec<Vec<CyclotomicNumber>> = (1..=d)
        .map(|j| {
            sscale(&fser[j], &CyclotomicNumber::from_integer(j as i64))
        })
        .collect();

    // Newton: y ← y − S(y)/S_Y(y), precision doubling
    let mut y = vec![y0.clone()];
    let mut prec = 1usize;
    while prec < w {
        prec = (prec * 2).min(w);
        let sy = shorner(&fser, &y, prec);
        let dy = shorner(&dser, &y, prec);
        if dy.first().map(CyclotomicNumber::is_zero).unwrap_or(true) {
            return None; // not a simple root
        }
        let correction = smul(&sy, &sinv(&dy, prec), prec);
        y = ssub(&y, &correction);
        y.truncate(prec);
    }

    // Taylor trick: y(v)·(t0+v)^(−t_lo) must be a polynomial of degree ≤ span
    let shift = u_power_series(-t_lo, t0, w);
    let r = smul(&y, &shift, w);
    if r.iter().skip(span + 1).any(|c| !c.is_zero()) {
        return None;
    }
    // Horner conversion of Σ r_k·(u−t0)^k into the standard basis
    let minus_t0 = t0.neg();
    let mut std = vec![CyclotomicNumber::zero(); span + 1];
    for k in (0..=span).rev() {
        // std ← std·(u − t0) + r_k
        for i in (0..span).rev() {
            std[i + 1] = std[i].clone();
        }
        std[0] = CyclotomicNumber::zero();
        for i in 0..span {
            let carry = std[i + 1].mul(&minus_t0);
            std[i] = std[i].add(&carry);
        }
        let rk = r.get(k).cloned().unwrap_or_else(CyclotomicNumber::zero);
        std[0] = std[0].add(&rk);
    }

    // decode the u-exponents through the Kronecker box
    let c_off: i64 = lo.iter().zip(radices).map(|(l, r)| l * r).sum();
    let total: i64 = lo.iter().zip(hi).zip(radices).map(|((l, h), r)| (h - l) * r).sum::<i64>() + 1;
    let nvars = lo.len();
    let mut root = LaurentPoly::zero(nvars);
    for (k, c) in std.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = t_lo + k as i64;
        let x = e - c_off;
        if x < 0 || x >= total {
            return None;
        }
        let mut exps = vec![0i64; nvars];
        let mut rest = x;
        for i in (0..nvars).rev() {
            let digit = rest / radices[i];
            rest -= digit * radices[i];
            exps[i] = digit + lo[i];
        }
        debug_assert_eq!(rest, 0);
        if exps[0] < 0 {
            return None;
        }
        root = root.add(&LaurentPoly::monomial(nvars, exps, c.clone()));
    }
    if s.eval_y(&root).is_zero() {
        Some(root)
    } else {
        None
    }
}

/// Series expansion of u^e at u = t0 + v, exact, to the given length.
fn u_power_series(e: i64, t0: &CyclotomicNumber, w: usize) -> Vec<CyclotomicNumber> {
    let base = t0.pow(e.unsigned_abs());
    let mut c = if e >= 0 { base } else { base.inverse() };
    let t0_inv = t0.inverse();
    let mut out = Vec::with_capacity(w);
    for k in 0..w {
        out.push(c.clone());
        // next: c · (e − k) / (k + 1) / t0
        let factor = BigRational::new(BigInt::from(e - k as i64), BigInt::from(k as i64 + 1));
        c = c.scale(&factor).mul(&t0_inv);
    }
    out
}

fn u_terms_series(
    terms: &[(i64, CyclotomicNumber)],
    t0: &CyclotomicNumber,
    w: usize,
) -> Vec<CyclotomicNumber> {
    let mut acc = vec![CyclotomicNumber::zero(); w];
    for (e, c) in terms {
        let ser = u_power_series(*e, t0, w);
        for (a, s) in acc.iter_mut().zip(&ser) {
            *a = a.add(&c.mul(s));
        }
    }
    acc
}

// truncated power series over the cyclotomic field

fn smul(a: &[CyclotomicNumber], b: &[CyclotomicNumber], w: usize) -> Vec<CyclotomicNumber> {
    let mut out = vec![CyclotomicNumber::zero(); w.min(a.len() + b.len()).max(1)];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() || i >= w {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= w {
                break;
            }
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out.truncate(w);
    out
}

fn ssub(a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(CyclotomicNumber::zero);
        let y = b.get(i).cloned().unwrap_or_else(CyclotomicNumber::zero);
        out.push(x.sub(&y));
    }
    out
}

fn sadd(a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(CyclotomicNumber::zero);
        let y = b.get(i).cloned().unwrap_or_else(CyclotomicNumber::zero);
        out.push(x.add(&y));
    }
    out
}

fn sscale(a: &[CyclotomicNumber], c: &CyclotomicNumber) -> Vec<CyclotomicNumber> {
    a.iter().map(|x| x.mul(c)).collect()
}

/// Inverse of a series with invertible constant term.
fn sinv(a: &[CyclotomicNumber], w: usize) -> Vec<CyclotomicNumber> {
    let a0 = a[0].inverse();
    let mut out = vec![CyclotomicNumber::zero(); w];
    out[0] = a0.clone();
    for k in 1..w {
        let mut acc = CyclotomicNumber::zero();
        for j in 1..=k {
            let aj = match a.get(j) {
                Some(v) if !v.is_zero() => v,
                _ => continue,
            };
            acc = acc.add(&aj.mul(&out[k - j]));
        }
        out[k] = acc.mul(&a0).neg();
    }
    out
}

/// Σ cs[j]·y^j in the series ring, Horner form.
fn shorner(cs: &[Vec<CyclotomicNumber>], y: &[CyclotomicNumber], w: usize) -> Vec<CyclotomicNumber> {
    let mut acc: Vec<CyclotomicNumber> = Vec::new();
    for c in cs.iter().rev() {
        acc = smul(&acc, y, w);
        let c_trunc: Vec<CyclotomicNumber> = c.iter().take(w).cloned().collect();
        acc = sadd(&acc, &c_trunc);
    }
    acc.truncate(w);
    acc
}

// ---------------------------------------------------------------------------
// univariate helpers over the cyclotomic field
// ---------------------------------------------------------------------------

fn kdeg(p: &[CyclotomicNumber]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn keval(p: &[CyclotomicNumber], x: &CyclotomicNumber) -> CyclotomicNumber {
    let mut acc = CyclotomicNumber::zero();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

fn kgcd(a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    loop {
        let db = match kdeg(&b) {
            None => {
                // normalize to monic for a canonical answer
                if let Some(da) = kdeg(&a) {
                    let inv = a[da].inverse();
                    return a.iter().take(da + 1).map(|c| c.mul(&inv)).collect();
                }
                return vec![CyclotomicNumber::zero()];
            }
            Some(d) => d,
        };
        let r = kmod(&a, &b[..=db]);
        a = b;
        b = r;
    }
}

fn kmod(a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> Vec<CyclotomicNumber> {
    let db = kdeg(b).expect("nonzero divisor");
    let lead_inv = b[db].inverse();
    let mut r = a.to_vec();
    while let Some(dr) = kdeg(&r) {
        if dr < db {
            break;
        }
        let q = r[dr].mul(&lead_inv);
        for i in 0..=db {
            let delta = q.mul(&b[i]);
            r[dr - db + i] = r[dr - db + i].sub(&delta);
        }
    }
    r
}

// ---------------------------------------------------------------------------
// reducibility probes
// ---------------------------------------------------------------------------

/// First exponent m ≤ deg_Y such that the uniform power substitution
/// X_i ↦ X_i^m makes the polynomial reducible — but only when the given
/// monomial substitution (row i = multiindex for X_i) already produces a
/// reducible form, the hypothesis the search is licensed by.
pub fn find_reducible_power(
    a: &YPoly,
    substitutions: &[Vec<i64>],
    cfg: &YConfig,
) -> Option<u64> {
    let gate = a.map_coeffs(|c| c.subst_monomial(substitutions));
    if !is_reducible(&gate, cfg) {
        return None;
    }
    for m in 1..=a.degree() as u64 {
        let t = a.map_coeffs(|c| c.subst_power(m));
        if is_reducible(&t, cfg) {
            return Some(m);
        }
    }
    None
}

/// Reducibility via exact linear factors: complete for degree ≤ 3.
fn is_reducible(t: &YPoly, cfg: &YConfig) -> bool {
    if t.degree() <= 1 {
        return false;
    }
    match y_roots(t, cfg) {
        Ok(roots) => !roots.is_empty(),
        Err(_) => false,
    }
}

/// Maximum number of irreducible factors of the Y-polynomial specialized at
/// random rational points — advisory information for scheduling only.
pub fn factor_count_probe(s: &YPoly, trials: u32, seed: u64) -> usize {
    let nvars = s.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 1;
    for _ in 0..trials {
        let vals: Vec<CyclotomicNumber> = (0..nvars)
            .map(|_| {
                let num: i64 = loop {
                    let v = rng.gen_range(-20..=20);
                    if v != 0 {
                        break v;
                    }
                };
                let den: i64 = rng.gen_range(1..=4);
                CyclotomicNumber::from_rational(BigRational::new(num.into(), den.into()))
            })
            .collect();
        let spec: Option<Vec<CyclotomicNumber>> =
            (0..=s.degree()).map(|j| s.coeff(j).eval_at(&vals)).collect();
        let spec = match spec {
            Some(p) => p,
            None => continue,
        };
        if kdeg(&spec) != Some(s.degree()) {
            continue;
        }
        if spec.iter().all(|c| c.is_rational()) {
            let rp: Vec<BigRational> = spec.iter().map(|c| c.as_rational().unwrap()).collect();
            best = best.max(rational_factor_count(&rp));
        }
    }
    best
}

/// Exact number of irreducible factors over the rationals, multiplicities
/// counted, for degree ≤ 4; higher residual degrees count as one block.
fn rational_factor_count(p: &[BigRational]) -> usize {
    let deg = match ratpoly::deg(p) {
        None | Some(0) => return 0,
        Some(d) => d,
    };
    let mut linear = 0usize;
    let mut rest = p.to_vec();
    if let Some(roots) = ratpoly::rational_roots(&rest) {
        for r in roots {
            // deflate as many times as the root divides
            loop {
                let lin = vec![-r.clone(), BigRational::one()];
                match ratpoly::exact_div(&rest, &lin) {
                    Some(q) => {
                        linear += 1;
                        rest = q;
                    }
                    None => break,
                }
            }
        }
    }
    let rdeg = ratpoly::deg(&rest).unwrap_or(0);
    debug_assert_eq!(rdeg + linear, deg);
    let blocks = match rdeg {
        0 => 0,
        2 | 3 => 1, // no rational root: irreducible at these degrees
        4 => {
            if quartic_splits_in_quadratics(&rest) {
                2
            } else {
                1
            }
        }
        _ => 1,
    };
    linear + blocks
}

/// Does a monic quartic without rational roots factor into two rational
/// quadratics? Checked through the resolvent cubic, exactly.
fn quartic_splits_in_quadratics(p: &[BigRational]) -> bool {
    // make monic and depress: x = y − a3/4
    let lead = p[4].clone();
    let a3 = &p[3] / &lead;
    let shift = -&a3 / BigRational::from_integer(4.into());
    // p(y + shift)/lead coefficients via double Horner
    let monic: Vec<BigRational> = p.iter().map(|c| c / &lead).collect();
    let mut dep = monic;
    // Taylor shift by `shift`: repeated synthetic division
    let mut shifted = vec![BigRational::zero(); 5];
    for k in 0..5 {
        // evaluate k-th derivative / k! at shift by repeated division
        let mut rem = BigRational::zero();
        for c in dep.iter().rev() {
            rem = rem * &shift + c;
        }
        shifted[k] = rem;
        // divide dep by (y − shift)
        let mut q = Vec::with_capacity(dep.len().saturating_sub(1));
        let mut carry = BigRational::zero();
        for c in dep.iter().rev() {
            let v = c + &carry * &shift;
            q.push(v.clone());
            carry = v;
        }
        q.pop();
        q.reverse();
        dep = q;
        if dep.is_empty() {
            break;
        }
    }
    let q2 = shifted[2].clone();
    let q1 = shifted[1].clone();
    let q0 = shifted[0].clone();
    // y⁴ + q2·y² + q1·y + q0 = (y² + sy + t)(y² − sy + u)
    if q1.is_zero() {
        // biquadratic: z² + q2·z + q0 needs a factorization with rational data
        let disc = &q2 * &q2 - BigRational::from_integer(4.into()) * &q0;
        if rational_sqrt(&disc).is_some() {
            return true;
        }
        // or s ≠ 0 with t = u: (y²+sy+t)(y²−sy+t): q2 = 2t − s², q0 = t²
        if let Some(t) = rational_sqrt(&q0) {
            for tt in [t.clone(), -t] {
                let s2 = BigRational::from_integer(2.into()) * &tt - &q2;
                if s2.is_positive() && rational_sqrt(&s2).is_some() {
                    return true;
                }
            }
        }
        return false;
    }
    // s² is a rational root of z³ + 2q2·z² + (q2²−4q0)·z − q1²
    let resolvent = vec![
        -(&q1 * &q1),
        &q2 * &q2 - BigRational::from_integer(4.into()) * &q0,
        BigRational::from_integer(2.into()) * &q2,
        BigRational::one(),
    ];
    if let Some(roots) = ratpoly::rational_roots(&resolvent) {
        for z in roots {
            if !z.is_positive() {
                continue;
            }
            if let Some(s) = rational_sqrt(&z) {
                // t and u from s: t+u = q2+s², u−t = q1/s
                let sum = &q2 + &z;
                let diff = &q1 / &s;
                let two = BigRational::from_integer(2.into());
                let u = (&sum + &diff) / &two;
                let t = (&sum - &diff) / &two;
                if &t * &u == q0 {
                    return true;
                }
            }
        }
    }
    false
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().sqrt();
    let den = r.denom().sqrt();
    if &(&num * &num) == r.numer() && &(&den * &den) == r.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_integer(n)
    }

    fn x1() -> LaurentPoly {
        LaurentPoly::var(2, 1)
    }

    fn x0() -> LaurentPoly {
        LaurentPoly::var(2, 0)
    }

    fn names(roots: &[LaurentPoly]) -> Vec<String> {
        roots.iter().map(|r| r.to_string()).collect()
    }

    #[test]
    fn perfect_square_has_both_signs() {
        // Y² = (X1+1)²
        let sq = x1().add(&LaurentPoly::one(2)).pow(2);
        let s = YPoly::monic(vec![sq.neg(), LaurentPoly::zero(2)]);
        let roots = y_roots(&s, &YConfig::default()).unwrap();
        assert_eq!(roots.len(), 2);
        let want = x1().add(&LaurentPoly::one(2));
        assert!(roots.contains(&want));
        assert!(roots.contains(&want.neg()));
    }

    #[test]
    fn split_quadratic() {
        // Y² − 5X1·Y + 6X1² → {2X1, 3X1}
        let s = YPoly::monic(vec![x1().pow(2).scale(&cyc(6)), x1().scale(&cyc(-5))]);
        let roots = y_roots(&s, &YConfig::default()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&x1().scale(&cyc(2))));
        assert!(roots.contains(&x1().scale(&cyc(3))));
    }

    #[test]
    fn non_square_has_no_roots() {
        // Y² − X1 → ∅
        let s = YPoly::monic(vec![x1().neg(), LaurentPoly::zero(2)]);
        let roots = y_roots(&s, &YConfig::default()).unwrap();
        assert!(roots.is_empty(), "got {:?}", names(&roots));
        // Y² − 2X1² → ∅ (2 is not a square)
        let s2 = YPoly::monic(vec![x1().pow(2).scale(&cyc(-2)), LaurentPoly::zero(2)]);
        assert!(y_roots(&s2, &YConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn double_root_collapses() {
        // (Y − X1)² = Y² − 2X1Y + X1²
        let s = YPoly::monic(vec![x1().pow(2), x1().scale(&cyc(-2))]);
        let roots = y_roots(&s, &YConfig::default()).unwrap();
        assert_eq!(roots, vec![x1()]);
    }

    #[test]
    fn index_variable_in_roots() {
        // Y² = X0²X1²
        let m = x0().mul(&x1());
        let s = YPoly::monic(vec![m.pow(2).neg(), LaurentPoly::zero(2)]);
        let roots = y_roots(&s, &YConfig::default()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&m));
        assert!(roots.contains(&m.neg()));
    }

    #[test]
    fn laurent_supported_roots() {
        // Y² = (X1 + X1⁻¹)²
        let lau = x1().add(&LaurentPoly::monomial(2, vec![0, -1], cyc(1)));
        let s = YPoly::monic(vec![lau.pow(2).neg(), LaurentPoly::zero(2)]);
        let roots = y_roots(&s, &YConfig::default()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&lau));
    }

    #[test]
    fn cubic_torsion_orbit() {
        // Y³ = (2X1+1)³: all three cube roots of unity show up
        let base = x1().scale(&cyc(2)).add(&LaurentPoly::one(2));
        let s = YPoly::monic(vec![
            base.pow(3).neg(),
            LaurentPoly::zero(2),
            LaurentPoly::zero(2),
        ]);
        let roots = y_roots(&s, &YConfig::default()).unwrap();
        assert_eq!(roots.len(), 3, "got {:?}", names(&roots));
        assert!(roots.contains(&base));
        let w3 = CyclotomicNumber::root_of_unity(3, 1);
        assert!(roots.contains(&base.scale(&w3)));
    }

    #[test]
    fn cubic_with_mixed_factors() {
        // (Y − X1)(Y² + X1Y + X1²) = Y³ − X1³: the torsion pair completes it
        let s = YPoly::monic(vec![
            x1().pow(3).neg(),
            LaurentPoly::zero(2),
            LaurentPoly::zero(2),
        ]);
        let roots = y_roots(&s, &YConfig::default()).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&x1()));
    }

    #[test]
    fn triple_root_via_derivative() {
        // (Y − X1)³: every specialization is non-regular
        let s = YPoly::monic(vec![
            x1().pow(3).neg(),
            x1().pow(2).scale(&cyc(3)),
            x1().scale(&cyc(-3)),
        ]);
        let roots = y_roots(&s, &YConfig::default()).unwrap();
        assert_eq!(roots, vec![x1()]);
    }

    #[test]
    fn products_of_linear_factors_are_found() {
        // (Y − 2X1)(Y − 3X1)(Y − X0) with an inert quadratic cofactor left out
        let p1 = x1().scale(&cyc(2));
        let p2 = x1().scale(&cyc(3));
        let p3 = x0();
        // expand (Y−p1)(Y−p2)(Y−p3)
        let e1 = p1.add(&p2).add(&p3);
        let e2 = p1.mul(&p2).add(&p1.mul(&p3)).add(&p2.mul(&p3));
        let e3 = p1.mul(&p2).mul(&p3);
        let s = YPoly::monic(vec![e3.neg(), e2, e1.neg()]);
        let roots = y_roots(&s, &YConfig::default()).unwrap();
        assert_eq!(roots.len(), 3, "got {:?}", names(&roots));
        assert!(roots.contains(&p1) && roots.contains(&p2) && roots.contains(&p3));
    }

    #[test]
    fn reducible_power_search() {
        // A = Y² − X1 (nvars 2)
        let a = YPoly::monic(vec![x1().neg(), LaurentPoly::zero(2)]);
        // substitution X1 ↦ X1 keeps it irreducible: hypothesis fails
        assert_eq!(find_reducible_power(&a, &[vec![1]], &YConfig::default()), None);
        // substitution X1 ↦ X1² licenses the search, which finds m = 2
        assert_eq!(find_reducible_power(&a, &[vec![2]], &YConfig::default()), Some(2));
        // already-reducible input returns m = 1
        let b = YPoly::monic(vec![x1().pow(2).neg(), LaurentPoly::zero(2)]);
        assert_eq!(find_reducible_power(&b, &[vec![1]], &YConfig::default()), Some(1));
    }

    #[test]
    fn reducible_power_bivariate() {
        // A = Y² − X1X2, substitutions ((2,0),(0,2)) → Y² − X1²X2², m = 2
        let x2 = LaurentPoly::var(3, 2);
        let m = LaurentPoly::var(3, 1).mul(&x2);
        let a = YPoly::monic(vec![m.neg(), LaurentPoly::zero(3)]);
        let subs = [vec![2, 0], vec![0, 2]];
        assert_eq!(find_reducible_power(&a, &subs, &YConfig::default()), Some(2));
    }

    #[test]
    fn probe_counts_factors() {
        // a generic seed: specializations of Y²−X1 avoid perfect squares
        let seed = 3;
        let a = YPoly::monic(vec![x1().pow(2).neg(), LaurentPoly::zero(2)]);
        assert_eq!(factor_count_probe(&a, 6, seed), 2);
        let b = YPoly::monic(vec![x1().neg(), LaurentPoly::zero(2)]);
        assert_eq!(factor_count_probe(&b, 6, seed), 1);
        let c = YPoly::monic(vec![
            x1().pow(3).neg(),
            LaurentPoly::zero(2),
            LaurentPoly::zero(2),
        ]);
        assert!(factor_count_probe(&c, 6, seed) >= 2);
    }

    #[test]
    fn quartic_split_detection() {
        // (y²−2)(y²−3) = y⁴ −5y² + 6: splits without rational roots
        let p: Vec<BigRational> = [6, 0, -5, 0, 1]
            .iter()
            .map(|n| BigRational::from_integer(BigInt::from(*n)))
            .collect();
        assert_eq!(rational_factor_count(&p), 2);
        // y⁴ + 1 is irreducible over the rationals? no — it splits as
        // (y²+√2y+1)(y²−√2y+1) only irrationally, so it counts as one block
        let q: Vec<BigRational> = [1, 0, 0, 0, 1]
            .iter()
            .map(|n| BigRational::from_integer(BigInt::from(*n)))
            .collect();
        assert_eq!(rational_factor_count(&q), 1);
        // (y²+1)² should count multiplicity: 2 blocks
        let r: Vec<BigRational> = [1, 0, 2, 0, 1]
            .iter()
            .map(|n| BigRational::from_integer(BigInt::from(*n)))
            .collect();
        assert_eq!(rational_factor_count(&r), 2);
    }

    #[test]
    fn zero_polynomial_edge() {
        // S = Y²: only root is 0
        let s = YPoly::monic(vec![LaurentPoly::zero(2), LaurentPoly::zero(2)]);
        let roots = y_roots(&s, &YConfig::default()).unwrap();
        assert_eq!(roots, vec![LaurentPoly::zero(2)]);
    }
}
