//! Independent per-index root oracle.
//!
//! For a fixed index n the equation specializes to one polynomial with
//! rational coefficients; this module decides, from scratch, which rational
//! roots it has. The search never touches the solver: the specialization is
//! scaled to a monic integer polynomial (whose rational roots are integers),
//! zero roots are stripped, degree two is settled by an exact integer square
//! root, and higher degrees by Sturm-chain sign-variation counts driving an
//! integer bisection. All arithmetic is exact.

use hadamard::solver::MonicProblem;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    /// A coefficient could not be evaluated termwise at this index (its
    /// roots are not integral here), so no specialization exists.
    #[error("no integral specialization at this index: {0}")]
    NonIntegralRoot(String),
    /// The specialized coefficient lies outside the rationals.
    #[error("coefficient value outside the rationals: {0}")]
    NonRationalValue(String),
}

/// All rational roots of the monic specialization at index n, sorted.
pub fn oracle_roots(p: &MonicProblem, n: u64) -> Result<Vec<BigRational>, OracleError> {
    let d = p.degree();
    let mut values = Vec::with_capacity(d + 1);
    for j in 0..d {
        let c = p
            .coeff(j)
            .eval_term(n)
            .map_err(|e| OracleError::NonIntegralRoot(e.to_string()))?;
        match c.as_rational() {
            Some(r) => values.push(r),
            None => return Err(OracleError::NonRationalValue(c.to_string())),
        }
    }
    values.push(BigRational::one());
    Ok(rational_roots_of(&values))
}

/// One witness root when any exists: the smallest by absolute value, the
/// positive one on ties.
pub fn oracle_solvable(p: &MonicProblem, n: u64) -> Result<Option<BigRational>, OracleError> {
    let roots = oracle_roots(p, n)?;
    Ok(roots
        .into_iter()
        .min_by_key(|r| (r.abs(), r.is_negative())))
}

/// All rational roots of sum values[j] * y^j, values[d] nonzero.
pub fn rational_roots_of(values: &[BigRational]) -> Vec<BigRational> {
    let d = values.len() - 1;
    assert!(d >= 1 && !values[d].is_zero(), "nonconstant polynomial required");
    // scale y = z / lambda so z satisfies a monic integer polynomial:
    // lambda = leading * lcm of denominators
    let mut m = BigInt::one();
    for v in values {
        m = m.lcm(v.denom());
    }
    let lambda_rat = &values[d] * BigRational::from_integer(m);
    debug_assert!(lambda_rat.is_integer());
    let lambda = lambda_rat.to_integer();
    let mut e: Vec<BigInt> = Vec::with_capacity(d + 1);
    for (j, v) in values.iter().enumerate() {
        let scaled = v * BigRational::from_integer(lambda.pow((d - j) as u32)) / &values[d];
        debug_assert!(scaled.is_integer());
        e.push(scaled.to_integer());
    }
    debug_assert!(e[d].is_one());

    let mut roots: Vec<BigRational> = Vec::new();
    // strip zero roots
    let mut low = 0;
    while low < d && e[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let e = &e[low..];
    for z in integer_roots_monic(e) {
        roots.push(BigRational::new(z, lambda.clone()));
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Integer roots of a monic integer polynomial with nonzero constant term,
/// coefficients low to high.
fn integer_roots_monic(e: &[BigInt]) -> Vec<BigInt> {
    let d = e.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![-&e[0]];
    }
    if d == 2 {
        // z^2 + e1 z + e0: exact discriminant square test
        let disc = &e[1] * &e[1] - BigInt::from(4) * &e[0];
        if disc.is_negative() {
            return Vec::new();
        }
        let s = disc.sqrt();
        if &s * &s != disc {
            return Vec::new();
        }
        let two = BigInt::from(2);
        let mut out = Vec::new();
        for cand in [(-&e[1] + &s), (-&e[1] - &s)] {
            let (q, r) = cand.div_rem(&two);
            if r.is_zero() {
                out.push(q);
            }
        }
        out.dedup();
        return out;
    }
    sturm_integer_roots(e)
}

// ---------------------------------------------------------------------------
// Sturm-chain isolation (degrees >= 3)
// ---------------------------------------------------------------------------

type RatPoly = Vec<BigRational>;

fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn derivative(p: &[BigRational]) -> RatPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Remainder of a by b, with the quotient discarded; b is monic-normalized
/// by the caller.
fn rem(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let mut r: RatPoly = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1;
        let f = &r[k] / &lead;
        for i in 0..=db {
            let t = &f * &b[i];
            r[k - db + i] -= t;
        }
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Monic squarefree part p / gcd(p, p').
fn squarefree(p: &[BigRational]) -> RatPoly {
    let mut a: RatPoly = p.to_vec();
    trim(&mut a);
    let mut b = derivative(&a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    // a is the gcd; divide p by it exactly
    let mut num: RatPoly = p.to_vec();
    trim(&mut num);
    let lead = a.last().expect("nonzero gcd").clone();
    let g: RatPoly = a.iter().map(|c| c / &lead).collect();
    let dg = g.len() - 1;
    let mut q = vec![BigRational::zero(); num.len() - dg];
    while num.len() > dg {
        let k = num.len() - 1;
        let f = num[k].clone();
        q[k - dg] = f.clone();
        for i in 0..=dg {
            let t = &f * &g[i];
            num[k - dg + i] -= t;
        }
        trim(&mut num);
        if num.is_empty() {
            break;
        }
    }
    debug_assert!(num.is_empty(), "gcd divides its polynomial");
    trim(&mut q);
    q
}

/// Sturm chain of a squarefree polynomial.
fn sturm_chain(p: &[BigRational]) -> Vec<RatPoly> {
    let mut chain = vec![p.to_vec()];
    let mut d = derivative(p);
    trim(&mut d);
    while !d.is_empty() {
        let next = rem(chain.last().unwrap(), &d);
        chain.push(d);
        if next.is_empty() {
            break;
        }
        d = next.iter().map(|c| -c).collect();
    }
    chain
}

/// Sign variations of the chain at x.
fn variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None; // sign as is_positive
    for p in chain {
        let v = eval(p, x);
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

fn sturm_integer_roots(e: &[BigInt]) -> Vec<BigInt> {
    let d = e.len() - 1;
    let p: RatPoly = e.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let sf = squarefree(&p);
    let chain = sturm_chain(&sf);

    // Fujiwara-style bound: every real root has |z| <= 2 max |e_j|^(1/(d-j))
    let mut bound = BigInt::one();
    for (j, c) in e.iter().enumerate().take(d) {
        if c.is_zero() {
            continue;
        }
        let b = c.abs().nth_root((d - j) as u32) + 1u32;
        if b > bound {
            bound = b;
        }
    }
    bound = bound * 2 + 1u32;

    let lo: BigInt = -&bound - 1;
    let hi = bound.clone();
    let mut out = Vec::new();
    let vlo = variations(&chain, &BigRational::from_integer(lo.clone()));
    let vhi = variations(&chain, &BigRational::from_integer(hi.clone()));
    let mut stack = vec![(lo, hi, vlo, vhi)];
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        if vlo <= vhi {
            continue; // no roots in (lo, hi]
        }
        if &hi - &lo == BigInt::one() {
            // a root lies in (lo, hi]; the only integer candidate is hi
            if eval(&p, &BigRational::from_integer(hi.clone())).is_zero() {
                out.push(hi);
            }
            continue;
        }
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        let vmid = variations(&chain, &BigRational::from_integer(mid.clone()));
        stack.push((lo, mid.clone(), vlo, vmid));
        stack.push((mid, hi, vmid, vhi));
    }
    out.sort();
    out
}
