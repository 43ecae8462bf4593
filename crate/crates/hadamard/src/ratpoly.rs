//! Dense univariate polynomials over the rationals, ascending coefficients.
//! Shared plumbing for characteristic polynomials and field arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::factor_bigint;

pub(crate) type RatPoly = Vec<BigRational>;

pub(crate) fn deg(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn trim(mut p: RatPoly) -> RatPoly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

pub(crate) fn is_zero(p: &[BigRational]) -> bool {
    deg(p).is_none()
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    if is_zero(a) || is_zero(b) {
        return vec![BigRational::zero()];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn divmod(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let db = deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    let mut quo = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = deg(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        quo[dr - db] = c.clone();
        for i in 0..=db {
            let delta = &c * &b[i];
            rem[dr - db + i] -= delta;
        }
    }
    (trim(quo), trim(rem))
}

/// Division known (or required) to be exact; None when a remainder survives.
pub(crate) fn exact_div(a: &[BigRational], b: &[BigRational]) -> Option<RatPoly> {
    let (q, r) = divmod(a, b);
    if is_zero(&r) {
        Some(q)
    } else {
        None
    }
}

pub(crate) fn derivative(p: &[BigRational]) -> RatPoly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub(crate) fn monic(p: &[BigRational]) -> RatPoly {
    let d = deg(p).expect("cannot normalize the zero polynomial");
    let lead = p[d].clone();
    trim(p.iter().map(|c| c / &lead).collect())
}

pub(crate) fn gcd_monic(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    while !is_zero(&r1) {
        let (_, r) = divmod(&r0, &r1);
        r0 = r1;
        r1 = r;
    }
    if is_zero(&r0) {
        r0
    } else {
        monic(&r0)
    }
}

pub(crate) fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Yun's squarefree decomposition: monic squarefree factors with their
/// multiplicities, in increasing multiplicity order. Requires a nonzero input.
pub(crate) fn squarefree_decomposition(p: &[BigRational]) -> Vec<(RatPoly, usize)> {
    let p = monic(p);
    if deg(&p) == Some(0) || deg(&p).is_none() {
        return vec![];
    }
    let dp = derivative(&p);
    let a = gcd_monic(&p, &dp);
    let mut b = exact_div(&p, &a).unwrap();
    let mut d = sub(&exact_div(&dp, &a).unwrap(), &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1usize;
    while deg(&b) > Some(0) {
        let g = gcd_monic(&b, &d);
        if deg(&g) > Some(0) {
            out.push((g.clone(), i));
        }
        b = exact_div(&b, &g).unwrap();
        d = sub(&exact_div(&d, &g).unwrap(), &derivative(&b));
        i += 1;
    }
    out
}

/// All divisors of |n| as positive integers; None when n cannot be factored
/// or the divisor set would be unreasonably large.
pub(crate) fn bigint_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return None;
    }
    let facs = factor_bigint(&n)?;
    let count: u64 = facs.iter().map(|(_, e)| *e as u64 + 1).product();
    if count > 4096 {
        return None;
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in facs {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        let mut pk = BigInt::one();
        for _ in 0..=e {
            for d in &divs {
                next.push(d * &pk);
            }
            pk *= BigInt::from(p);
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

/// Distinct rational roots of p, assuming p(0) ≠ 0.
/// None when the integerized edge coefficients cannot be factored.
pub(crate) fn rational_roots(p: &[BigRational]) -> Option<Vec<BigRational>> {
    let d = deg(p)?;
    if d == 0 {
        return Some(vec![]);
    }
    // integerize
    let mut den = BigInt::one();
    for c in p.iter() {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let ip: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    debug_assert!(!ip[0].is_zero(), "rational_roots requires a nonzero constant term");
    let nums = bigint_divisors(&ip[0])?;
    let dens = bigint_divisors(&ip[d])?;
    let mut roots = Vec::new();
    for u in &nums {
        for v in &dens {
            for sign in [1i64, -1] {
                let cand = BigRational::new(u * BigInt::from(sign), v.clone());
                if eval(p, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    Some(roots)
}
