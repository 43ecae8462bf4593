//! Roots of exponential terms: values ω_M^j · ∏ p^(e_p) with p prime and
//! rational exponents e_p. The representation (reduced torsion fraction,
//! sorted prime→exponent map with zero exponents dropped) is canonical:
//! two radical roots are equal as complex numbers iff they are equal here,
//! by linear independence of {log p} over Q.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::arith::{factor_bigint, gcd_u64};
use crate::cyclotomic::CyclotomicNumber;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RadicalRoot {
    /// Reduced fraction j/M with 0 ≤ j < M; the unit part ω_M^j = e^(2πi·j/M).
    torsion_num: u64,
    torsion_den: u64,
    /// Prime → nonzero rational exponent.
    radicals: BTreeMap<u64, Rational64>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RadicalError {
    #[error("zero has no radical-root form")]
    Zero,
    #[error("could not factor {0} over the supported prime range")]
    UnfactoredBase(BigInt),
}

impl RadicalRoot {
    pub fn one() -> Self {
        Self { torsion_num: 0, torsion_den: 1, radicals: BTreeMap::new() }
    }

    pub fn new(torsion_num: u64, torsion_den: u64, radicals: BTreeMap<u64, Rational64>) -> Self {
        assert!(torsion_den >= 1);
        let j = torsion_num % torsion_den;
        let g = gcd_u64(j, torsion_den);
        let (torsion_num, torsion_den) =
            if j == 0 { (0, 1) } else { (j / g, torsion_den / g) };
        let radicals: BTreeMap<u64, Rational64> =
            radicals.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        debug_assert!(radicals.keys().all(|p| crate::arith::is_prime_u64(*p)));
        Self { torsion_num, torsion_den, radicals }
    }

    /// The root whose value is the nonzero rational r.
    pub fn from_rational(r: &BigRational) -> Result<Self, RadicalError> {
        if r.is_zero() {
            return Err(RadicalError::Zero);
        }
        let mut radicals = BTreeMap::new();
        let numer = r.numer().abs();
        let denom = r.denom().abs();
        for (int, sign) in [(numer, 1i64), (denom, -1i64)] {
            let facs = factor_bigint(&int).ok_or(RadicalError::UnfactoredBase(int.clone()))?;
            for (p, e) in facs {
                *radicals.entry(p).or_insert_with(Rational64::zero) +=
                    Rational64::from_integer(sign * e as i64);
            }
        }
        let (tn, td) = if r.is_negative() { (1, 2) } else { (0, 1) };
        Ok(Self::new(tn, td, radicals))
    }

    pub fn from_integer(n: i64) -> Result<Self, RadicalError> {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn root_of_unity(m: u64, j: u64) -> Self {
        Self::new(j, m, BTreeMap::new())
    }

    pub fn is_one(&self) -> bool {
        self.torsion_den == 1 && self.radicals.is_empty()
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.radicals.is_empty()
    }

    /// Order of the unit part (1 if none).
    pub fn torsion_order(&self) -> u64 {
        self.torsion_den
    }

    pub fn torsion(&self) -> (u64, u64) {
        (self.torsion_num, self.torsion_den)
    }

    pub fn radicals(&self) -> &BTreeMap<u64, Rational64> {
        &self.radicals
    }

    /// True when every prime exponent is an integer.
    pub fn exponents_integral(&self) -> bool {
        self.radicals.values().all(|e| e.is_integer())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let den = crate::arith::lcm_u64(self.torsion_den, other.torsion_den);
        let num = self.torsion_num * (den / self.torsion_den)
            + other.torsion_num * (den / other.torsion_den);
        let mut radicals = self.radicals.clone();
        for (p, e) in &other.radicals {
            *radicals.entry(*p).or_insert_with(Rational64::zero) += e;
        }
        Self::new(num, den, radicals)
    }

    pub fn inv(&self) -> Self {
        let radicals = self.radicals.iter().map(|(p, e)| (*p, -e)).collect();
        let num = if self.torsion_num == 0 { 0 } else { self.torsion_den - self.torsion_num };
        Self::new(num, self.torsion_den, radicals)
    }

    /// Principal-branch rational power: the unit part e^(2πi·j/M) maps to
    /// e^(2πi·j·r/M) and each prime exponent is scaled by r.
    pub fn pow(&self, r: Rational64) -> Self {
        if r.is_zero() {
            return Self::one();
        }
        let radicals = self.radicals.iter().map(|(p, e)| (*p, e * r)).collect();
        // j/M · a/b as a fraction mod 1, kept exact in u64 range
        let a = *r.numer();
        let b = *r.denom();
        debug_assert!(b > 0);
        let den = self.torsion_den as i128 * b as i128;
        let mut num = (self.torsion_num as i128 * a as i128).rem_euclid(den);
        let g = {
            let mut x = num;
            let mut y = den;
            while y != 0 {
                let t = x % y;
                x = y;
                y = t;
            }
            x.max(1)
        };
        num /= g;
        let den = den / g;
        assert!(den <= u64::MAX as i128 && num >= 0);
        Self::new(num as u64, den as u64, radicals)
    }

    pub fn pow_int(&self, k: i64) -> Self {
        self.pow(Rational64::from_integer(k))
    }

    /// Exact rational value, when the root is ±∏p^(integer).
    pub fn rational_value(&self) -> Option<BigRational> {
        if !self.exponents_integral() || self.torsion_den > 2 {
            return None;
        }
        let mut v = BigRational::one();
        for (p, e) in &self.radicals {
            let k = e.to_integer();
            let pw = BigInt::from(*p).pow(k.unsigned_abs() as u32);
            if k >= 0 {
                v *= BigRational::from_integer(pw);
            } else {
                v /= BigRational::from_integer(pw);
            }
        }
        if self.torsion_den == 2 {
            v = -v;
        }
        Some(v)
    }

    /// Exact cyclotomic value, when all exponents are integral
    /// (value = ω_M^j · rational).
    pub fn cyclotomic_value(&self) -> Option<CyclotomicNumber> {
        if !self.exponents_integral() {
            return None;
        }
        let mut v = BigRational::one();
        for (p, e) in &self.radicals {
            let k = e.to_integer();
            let pw = BigInt::from(*p).pow(k.unsigned_abs() as u32);
            if k >= 0 {
                v *= BigRational::from_integer(pw);
            } else {
                v /= BigRational::from_integer(pw);
            }
        }
        Some(CyclotomicNumber::root_of_unity(self.torsion_den, self.torsion_num).scale(&v))
    }

    /// |value| as f64, for diagnostics only.
    pub fn abs_approx(&self) -> f64 {
        self.radicals
            .iter()
            .map(|(p, e)| (*p as f64).powf(*e.numer() as f64 / *e.denom() as f64))
            .product()
    }

    pub fn complex_approx(&self) -> (f64, f64) {
        let r = self.abs_approx();
        let ang = 2.0 * std::f64::consts::PI * self.torsion_num as f64 / self.torsion_den as f64;
        (r * ang.cos(), r * ang.sin())
    }
}

impl std::fmt::Display for RadicalRoot {
    /// `w(j/M)*p^(a/b)*...`; the unit factor is omitted when trivial,
    /// and the whole expression collapses to `1` when empty.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.torsion_den > 1 {
            parts.push(format!("w({}/{})", self.torsion_num, self.torsion_den));
        }
        for (p, e) in &self.radicals {
            if e.is_integer() {
                parts.push(format!("{}^{}", p, e.numer()));
            } else {
                parts.push(format!("{}^({}/{})", p, e.numer(), e.denom()));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}
