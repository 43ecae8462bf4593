//! The coefficient ring for exponential polynomials: finite sums
//! Σ c_μ · μ where c_μ is cyclotomic and μ = ∏ p^(f_p) is a radical
//! monomial with every exponent in the open interval (0, 1/2).
//!
//! Any rational power of a prime can be brought to this form, because
//! integer powers are rational and half powers are cyclotomic via Gauss
//! sums (√2 = ω_8 - ω_8³, and for odd p the quadratic Gauss sum gives
//! ±√p or ±i√p exactly). With exponents confined to (0, 1/2), distinct
//! monomials have ratios ∏ p^(h_p), 0 < |h_p| < 1/2, which generate
//! non-normal fields and hence cannot lie in any cyclotomic field; the
//! monomials are therefore linearly independent over the cyclotomics and
//! the representation is canonical: a scalar is zero iff it has no terms.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::arith::pow_mod;
use crate::cyclotomic::CyclotomicNumber;
use crate::radical::RadicalRoot;

/// √p as an exact cyclotomic number (the positive real square root).
pub fn sqrt_prime(p: u64) -> CyclotomicNumber {
    static CACHE: OnceLock<Mutex<HashMap<u64, CyclotomicNumber>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&p) {
        return v.clone();
    }
    debug_assert!(crate::arith::is_prime_u64(p));
    let val = if p == 2 {
        // ω_8 + ω_8^(-1)
        let w = CyclotomicNumber::root_of_unity(8, 1);
        w.add(&w.conj())
    } else {
        // quadratic Gauss sum Σ (t|p) ω_p^t; equals √p for p ≡ 1 (mod 4)
        // and i√p for p ≡ 3 (mod 4)
        let mut g = CyclotomicNumber::zero();
        for t in 1..p {
            let w = CyclotomicNumber::root_of_unity(p, t);
            if pow_mod(t, (p - 1) / 2, p) == 1 {
                g = g.add(&w);
            } else {
                g = g.sub(&w);
            }
        }
        if p % 4 == 1 {
            g
        } else {
            // divide by i
            g.mul(&CyclotomicNumber::root_of_unity(4, 3))
        }
    };
    debug_assert_eq!(
        val.mul(&val),
        CyclotomicNumber::from_integer(p as i64),
        "Gauss sum square sanity check"
    );
    cache.lock().unwrap().insert(p, val.clone());
    val
}

/// A canonical radical monomial: prime → exponent in (0, 1/2).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RadMono(BTreeMap<u64, Rational64>);

impl RadMono {
    pub fn trivial() -> Self {
        Self(BTreeMap::new())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &BTreeMap<u64, Rational64> {
        &self.0
    }

    fn approx(&self) -> f64 {
        self.0
            .iter()
            .map(|(p, e)| (*p as f64).powf(*e.numer() as f64 / *e.denom() as f64))
            .product()
    }
}

impl std::fmt::Display for RadMono {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, e)| format!("{}^({}/{})", p, e.numer(), e.denom()))
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Fold one prime exponent into canonical range: returns the residual
/// exponent in (0, 1/2) (or None) and the exact cyclotomic multiplier
/// carrying the split-off integer and half-integer parts.
fn fold_exponent(p: u64, e: Rational64) -> (Option<Rational64>, CyclotomicNumber) {
    let two_e = e * Rational64::from_integer(2);
    let k = two_e.floor().to_integer(); // e = k/2 + f, f in [0, 1/2)
    let f = e - Rational64::new(k, 2);
    debug_assert!(!f.is_negative() && f < Rational64::new(1, 2));
    // multiplier p^(k/2)
    let half = k.rem_euclid(2);
    let int_part = (k - half) / 2;
    let mut mult = if half == 1 {
        sqrt_prime(p)
    } else {
        CyclotomicNumber::one()
    };
    if int_part != 0 {
        let pw = BigInt::from(p).pow(int_part.unsigned_abs() as u32);
        let r = if int_part > 0 {
            BigRational::from_integer(pw)
        } else {
            BigRational::new(BigInt::one(), pw)
        };
        mult = mult.scale(&r);
    }
    (if f.is_zero() { None } else { Some(f) }, mult)
}

/// An element of the coefficient ring, as a canonical monomial → coefficient
/// map with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Scalar(BTreeMap<RadMono, CyclotomicNumber>);

impl Scalar {
    pub fn zero() -> Self {
        Self(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::from_cyclotomic(CyclotomicNumber::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_cyclotomic(CyclotomicNumber::from_rational(r))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_cyclotomic(CyclotomicNumber::from_integer(n))
    }

    pub fn from_cyclotomic(c: CyclotomicNumber) -> Self {
        let mut s = Self::zero();
        s.add_term(RadMono::trivial(), c);
        s
    }

    /// The exact value of a radical root as a scalar.
    pub fn from_radical(root: &RadicalRoot) -> Self {
        let (j, m) = root.torsion();
        let mut coeff = CyclotomicNumber::root_of_unity(m, j);
        let mut mono = BTreeMap::new();
        for (p, e) in root.radicals() {
            let (f, mult) = fold_exponent(*p, *e);
            coeff = coeff.mul(&mult);
            if let Some(f) = f {
                mono.insert(*p, f);
            }
        }
        let mut s = Self::zero();
        s.add_term(RadMono(mono), coeff);
        s
    }

    fn add_term(&mut self, mono: RadMono, coeff: CyclotomicNumber) {
        if coeff.is_zero() {
            return;
        }
        match self.0.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RadMono, &CyclotomicNumber)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// True when the value lies in a cyclotomic field (no radical part).
    pub fn is_cyclotomic(&self) -> bool {
        self.0.keys().all(|m| m.is_trivial())
    }

    pub fn as_cyclotomic(&self) -> Option<CyclotomicNumber> {
        if self.is_zero() {
            return Some(CyclotomicNumber::zero());
        }
        if self.0.len() == 1 {
            if let Some(c) = self.0.get(&RadMono::trivial()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_cyclotomic().and_then(|c| c.as_rational())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map_or(false, |r| r.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|(m, c)| (m.clone(), c.neg())).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                // sum the exponent maps, then refold each prime
                let mut merged: BTreeMap<u64, Rational64> = m1.0.clone();
                for (p, e) in &m2.0 {
                    *merged.entry(*p).or_insert_with(Rational64::zero) += e;
                }
                let mut coeff = c1.mul(c2);
                let mut mono = BTreeMap::new();
                for (p, e) in merged {
                    if e.is_zero() {
                        continue;
                    }
                    let (f, mult) = fold_exponent(p, e);
                    coeff = coeff.mul(&mult);
                    if let Some(f) = f {
                        mono.insert(p, f);
                    }
                }
                out.add_term(RadMono(mono), coeff);
            }
        }
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self(self.0.iter().map(|(m, c)| (m.clone(), c.scale(r))).collect())
    }

    pub fn scale_cyclotomic(&self, k: &CyclotomicNumber) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, c) in &self.0 {
            out.add_term(m.clone(), c.mul(k));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; None only for zero.
    ///
    /// For values with radical monomials the inverse is computed by the norm
    /// trick: multiply the conjugates of the value under the Kummer action
    /// p^(1/B) ↦ ω_B^t · p^(1/B); the full product is a cyclotomic number
    /// (it is fixed by the whole action), which the cyclotomic layer inverts.
    /// Twists of even B are restricted to even t so that the action is
    /// consistent with √p being folded into the coefficients.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(c) = self.as_cyclotomic() {
            return Some(Self::from_cyclotomic(c.inverse()));
        }
        // per prime: the lcm B of exponent denominators, and the twist step
        let mut dens: BTreeMap<u64, i64> = BTreeMap::new();
        for (m, _) in &self.0 {
            for (p, e) in m.exponents() {
                let d = dens.entry(*p).or_insert(1);
                *d = num_integer::lcm(*d, *e.denom());
            }
        }
        let primes: Vec<u64> = dens.keys().copied().collect();
        let setup: Vec<(i64, i64)> = primes
            .iter()
            .map(|p| {
                let b = dens[p];
                let step = if b % 2 == 0 { 2 } else { 1 };
                (b, b / step)
            })
            .collect();
        let total: i64 = setup.iter().map(|(_, count)| count).product();
        let mut cofactor = Scalar::one();
        for idx in 1..total {
            // decode idx into a twist per prime (mixed radix)
            let mut twists = BTreeMap::new();
            let mut rest = idx;
            for (p, (b, count)) in primes.iter().zip(&setup) {
                let t = (rest % count) * (b / count);
                rest /= count;
                if t != 0 {
                    twists.insert(*p, (t, *b));
                }
            }
            cofactor = cofactor.mul(&self.kummer_conjugate(&twists));
        }
        let norm = cofactor.mul(self);
        let c = norm
            .as_cyclotomic()
            .expect("full conjugate product must be cyclotomic");
        debug_assert!(!c.is_zero());
        Some(cofactor.scale_cyclotomic(&c.inverse()))
    }

    /// Apply the twist p^(a/b) ↦ ω_B^(t·a·B/b) · p^(a/b) to every term.
    fn kummer_conjugate(&self, twists: &BTreeMap<u64, (i64, i64)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.0 {
            let mut coeff = c.clone();
            for (p, e) in m.exponents() {
                if let Some((t, b)) = twists.get(p) {
                    debug_assert_eq!(b % e.denom(), 0);
                    let k = (t * e.numer() * (b / e.denom())).rem_euclid(*b) as u64;
                    coeff = coeff.mul(&CyclotomicNumber::root_of_unity(*b as u64, k));
                }
            }
            out.add_term(m.clone(), coeff);
        }
        out
    }

    pub fn complex_approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (m, c) in &self.0 {
            let (cr, ci) = c.complex_approx();
            let s = m.approx();
            re += cr * s;
            im += ci * s;
        }
        (re, im)
    }
}

impl std::fmt::Display for Scalar {
    /// `(<cyclotomic>)` or `(<cyclotomic>)*p^(a/b)*...`, terms joined by ` + `.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.0 {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_trivial() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}
