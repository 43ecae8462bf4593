//! Exact arithmetic in cyclotomic fields Q(ω_M).
//!
//! A value is stored as its coordinate vector in the power basis
//! 1, t, ..., t^(φ(M)-1) of Q[t]/Φ_M(t), with ω_M the class of t.
//! The order M is not kept minimal during arithmetic; `normalize`
//! reduces to the smallest cyclotomic field containing the value.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, euler_phi, gcd_u64, lcm_u64, rational_string};

/// Coefficients of the M-th cyclotomic polynomial, ascending degree.
/// Computed by exact division of t^M - 1 by the Φ_d for proper divisors d.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let poly = if m == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // t^m - 1
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = BigInt::from(-1);
        num[m as usize] = BigInt::one();
        for d in divisors(m) {
            if d < m {
                num = int_poly_exact_div(&num, &cyclotomic_polynomial(d));
            }
        }
        num
    };
    debug_assert_eq!(poly.len() as u64 - 1, euler_phi(m));
    cache.lock().unwrap().insert(m, poly.clone());
    poly
}

/// Exact division of integer polynomials (remainder known to vanish).
fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quo = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        // divisor is monic for every cyclotomic polynomial
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quo[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quo
}

/// An element of Q(ω_M) in the power basis of order `order`.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    order: u64,
    coords: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        Self { order: 1, coords: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self { order: 1, coords: vec![r] }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// ω_M^j, reduced so the stored order is the denominator of j/M.
    pub fn root_of_unity(m: u64, j: u64) -> Self {
        assert!(m >= 1);
        let j = j % m;
        let g = gcd_u64(j, m);
        let (j, m) = if g == 0 { (0, 1) } else { (j / g, m / g) };
        let phi = euler_phi(m) as usize;
        let mut coords = vec![BigRational::zero(); m as usize];
        coords[j as usize] = BigRational::one();
        let coords = reduce_mod_cyclotomic(coords, m, phi);
        Self { order: m, coords }
    }

    /// Construct from explicit coordinates (length must be φ(order)).
    pub fn from_coords(order: u64, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len() as u64, euler_phi(order));
        Self { order, coords }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map_or(false, |r| r.is_one())
    }

    /// Re-express in Q(ω_target); `order` must divide `target`.
    pub fn embed(&self, target: u64) -> Self {
        assert!(target % self.order == 0, "embedding requires order {} | {}", self.order, target);
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let phi = euler_phi(target) as usize;
        let mut long = vec![BigRational::zero(); (self.coords.len() - 1) * step + 1];
        for (i, c) in self.coords.iter().enumerate() {
            long[i * step] = c.clone();
        }
        let coords = reduce_mod_cyclotomic(long, target, phi);
        Self { order: target, coords }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let m = lcm_u64(self.order, other.order);
        (self.embed(m), other.embed(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coords.iter_mut().zip(&b.coords) {
            *x += y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        let mut a = self.clone();
        for c in a.coords.iter_mut() {
            *c = -c.clone();
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let phi = a.coords.len();
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        let coords = reduce_mod_cyclotomic(prod, a.order, phi);
        Self { order: a.order, coords }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut a = self.clone();
        for c in a.coords.iter_mut() {
            *c *= r;
        }
        a
    }

    /// Multiplicative inverse. Panics on zero; use `is_zero` first.
    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero cyclotomic number");
        let phi_poly: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        // u*self + v*Φ = g (a nonzero constant, since Φ is irreducible)
        let (g, u) = half_ext_gcd(&self.coords, &phi_poly);
        assert_eq!(poly_deg(&g), Some(0), "gcd with cyclotomic polynomial must be constant");
        let ginv = g[0].recip();
        let phi = self.coords.len();
        let coords = reduce_mod_cyclotomic(
            u.iter().map(|c| c * &ginv).collect(),
            self.order,
            phi,
        );
        Self { order: self.order, coords }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Galois action t ↦ t^a for gcd(a, order) = 1.
    pub fn galois(&self, a: u64) -> Self {
        let m = self.order;
        debug_assert_eq!(gcd_u64(a % m, m), 1);
        let phi = self.coords.len();
        let mut long = vec![BigRational::zero(); ((phi - 1) * (a as usize % m as usize)).max(1) + 1];
        for (i, c) in self.coords.iter().enumerate() {
            let k = (i * (a as usize % m as usize)) % m as usize;
            if long.len() <= k {
                long.resize(k + 1, BigRational::zero());
            }
            long[k] += c;
        }
        let coords = reduce_mod_cyclotomic(long, m, phi);
        Self { order: m, coords }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    /// Smallest-order representation of the same value.
    pub fn normalize(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        if let Some(r) = self.as_rational() {
            return Self::from_rational(r);
        }
        let m = self.order;
        for d in divisors(m) {
            if d == m {
                break;
            }
            // invariant under Gal(Q(ω_m)/Q(ω_d)) = { t ↦ t^a : a ≡ 1 mod d }?
            let fixed = (1..m)
                .filter(|a| gcd_u64(*a, m) == 1 && a % d == 1)
                .all(|a| self.galois(a) == *self);
            if !fixed {
                continue;
            }
            if let Some(x) = self.express_in_suborder(d) {
                return x;
            }
        }
        self.clone()
    }

    /// Solve for coordinates in Q(ω_d) ⊆ Q(ω_order), if the value lies there.
    fn express_in_suborder(&self, d: u64) -> Option<CyclotomicNumber> {
        let m = self.order;
        let phi_m = self.coords.len();
        let phi_d = euler_phi(d) as usize;
        // columns: images of the subfield power basis
        let omega_sub = Self::root_of_unity(m, m / d);
        let mut cols = Vec::with_capacity(phi_d);
        let mut pow = Self::one().embed(m);
        for k in 0..phi_d {
            if k > 0 {
                pow = pow.mul(&omega_sub);
            }
            cols.push(pow.coords.clone());
        }
        let sol = solve_rational_system(phi_m, &cols, &self.coords)?;
        Some(Self { order: d, coords: sol })
    }

    /// Write the value as ω_K^j · ρ with ρ a positive rational, if possible.
    /// Returns (j, K, ρ) with K minimal and 0 ≤ j < K, gcd(j, K) = 1 unless j = 0.
    pub fn unit_rational_form(&self) -> Option<(u64, u64, BigRational)> {
        if self.is_zero() {
            return None;
        }
        let x = self.normalize();
        if let Some(r) = x.as_rational() {
            return if r.is_positive() {
                Some((0, 1, r))
            } else {
                Some((1, 2, -r))
            };
        }
        let m = x.order;
        for j in 1..m {
            if gcd_u64(j, m) != 1 {
                continue;
            }
            let q = x.mul(&Self::root_of_unity(m, m - j));
            if let Some(r) = q.as_rational() {
                if r.is_positive() {
                    return Some((j, m, r));
                }
                // fold the sign into the root of unity
                return if m % 2 == 0 {
                    Some(((j + m / 2) % m, m, -r))
                } else {
                    Some(((m + 2 * j) % (2 * m), 2 * m, -r))
                };
            }
        }
        None
    }

    /// Principal d-th root within the class "root of unity times rational",
    /// when that root is again of the same class. Partial by design.
    pub fn nth_root(&self, d: u32) -> Option<Self> {
        assert!(d >= 1);
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (j, k, rho) = self.unit_rational_form()?;
        let s = crate::arith::nth_root_rational(&rho, d)?;
        let unit = Self::root_of_unity(k * d as u64, j);
        Some(unit.scale(&s))
    }

    /// Principal complex embedding t ↦ exp(2πi/order), for display only.
    pub fn complex_approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coords.iter().enumerate() {
            let v = rational_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * (i as f64) / (self.order as f64);
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // good enough for display purposes
    let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coords == other.coords;
        }
        let (a, b) = self.aligned(other);
        a.coords == b.coords
    }
}

impl Eq for CyclotomicNumber {}

impl std::fmt::Display for CyclotomicNumber {
    /// Sum-of-terms form: `c`, `c*w(i/M)`, joined by ` + ` / ` - `.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", rational_string(&mag))?;
            } else {
                let g = gcd_u64(i as u64, self.order);
                let (num, den) = (i as u64 / g, self.order / g);
                if mag.is_one() {
                    write!(f, "w({num}/{den})")?;
                } else {
                    write!(f, "{}*w({num}/{den})", rational_string(&mag))?;
                }
            }
        }
        Ok(())
    }
}

/// Reduce a raw coefficient vector mod Φ_order down to φ(order) coordinates.
fn reduce_mod_cyclotomic(mut v: Vec<BigRational>, order: u64, phi: usize) -> Vec<BigRational> {
    let modulus = cyclotomic_polynomial(order);
    debug_assert_eq!(modulus.len() - 1, phi);
    while v.len() > phi {
        let top = v.len() - 1;
        let c = v.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let shift = top - phi;
        for (i, m) in modulus.iter().take(phi).enumerate() {
            if !m.is_zero() {
                let delta = &c * BigRational::from_integer(m.clone());
                v[shift + i] -= delta;
            }
        }
    }
    v.resize(phi, BigRational::zero());
    v
}

fn poly_deg(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Extended Euclid keeping only the Bezout coefficient of `a`:
/// returns (g, u) with u*a ≡ g (mod b).
fn half_ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut u0 = vec![BigRational::one()];
    let mut u1 = vec![BigRational::zero()];
    while poly_deg(&r1).is_some() {
        let (q, rem) = poly_divmod(&r0, &r1);
        let uq = poly_sub(&u0, &poly_mul(&q, &u1));
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = uq;
    }
    (r0, u0)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
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
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    let mut quo = vec![BigRational::zero(); a.len().saturating_sub(db)];
    loop {
        match poly_deg(&rem) {
            Some(dr) if dr >= db => {
                let c = &rem[dr] / &lead;
                quo[dr - db] = c.clone();
                for i in 0..=db {
                    let delta = &c * &b[i];
                    rem[dr - db + i] -= delta;
                }
            }
            _ => break,
        }
    }
    (quo, rem)
}

/// Solve A x = b over the rationals, where A is given by columns.
/// Returns None if the system is inconsistent.
fn solve_rational_system(
    rows: usize,
    cols: &[Vec<BigRational>],
    rhs: &[BigRational],
) -> Option<Vec<BigRational>> {
    let n = cols.len();
    // augmented matrix, row major
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; n];
    let mut rank = 0usize;
    for c in 0..n {
        let Some(pr) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = m[rank][c].recip();
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for i in 0..=n {
                    let delta = &f * &m[rank][i];
                    m[r][i] -= delta;
                }
            }
        }
        pivot_of_col[c] = rank;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    // consistency: no row of the form (0 ... 0 | nonzero)
    for r in rank..rows {
        if !m[r][n].is_zero() {
            return None;
        }
    }
    let mut sol = vec![BigRational::zero(); n];
    for c in 0..n {
        if pivot_of_col[c] != usize::MAX {
            sol[c] = m[pivot_of_col[c]][n].clone();
        }
    }
    // verify (free columns were set to zero, so check is needed)
    for r in 0..rows {
        let mut acc = BigRational::zero();
        for c in 0..n {
            acc += &cols[c][r] * &sol[c];
        }
        if acc != rhs[r] {
            return None;
        }
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polynomials() {
        let p = |m: u64| -> Vec<i64> {
            cyclotomic_polynomial(m)
                .iter()
                .map(|c| i64::from_str_radix(&c.to_string(), 10).unwrap())
                .collect()
        };
        assert_eq!(p(1), vec![-1, 1]);
        assert_eq!(p(2), vec![1, 1]);
        assert_eq!(p(3), vec![1, 1, 1]);
        assert_eq!(p(4), vec![1, 0, 1]);
        assert_eq!(p(6), vec![1, -1, 1]);
        assert_eq!(p(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(p(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn omega4_squared_is_minus_one() {
        let i = CyclotomicNumber::root_of_unity(4, 1);
        let m1 = i.mul(&i);
        assert_eq!(m1, CyclotomicNumber::from_integer(-1));
    }

    #[test]
    fn omega3_sum_of_conjugates() {
        let w = CyclotomicNumber::root_of_unity(3, 1);
        let w2 = w.mul(&w);
        assert_eq!(w.add(&w2), CyclotomicNumber::from_integer(-1));
    }

    #[test]
    fn inverse_round_trip() {
        let w = CyclotomicNumber::root_of_unity(5, 1);
        let x = CyclotomicNumber::one().add(&w); // 1 + ω_5
        let prod = x.inverse().mul(&x);
        assert!(prod.is_one());
    }

    #[test]
    fn division_by_zero_guard() {
        let z = CyclotomicNumber::zero();
        assert!(std::panic::catch_unwind(|| z.inverse()).is_err());
    }

    #[test]
    fn cross_order_equality() {
        // ω_6^2 = ω_3
        let a = CyclotomicNumber::root_of_unity(6, 1).pow(2);
        let b = CyclotomicNumber::root_of_unity(3, 1);
        assert_eq!(a, b);
        // ω_2 = -1
        assert_eq!(
            CyclotomicNumber::root_of_unity(2, 1),
            CyclotomicNumber::from_integer(-1)
        );
    }

    #[test]
    fn embedding_preserves_products() {
        let w3 = CyclotomicNumber::root_of_unity(3, 1);
        let w4 = CyclotomicNumber::root_of_unity(4, 1);
        let prod = w3.mul(&w4); // ω_12^7
        assert_eq!(prod, CyclotomicNumber::root_of_unity(12, 7));
    }

    #[test]
    fn normalize_descends() {
        // ω_12^4 = ω_3 should normalize from order 12 to order 3
        let x = CyclotomicNumber::root_of_unity(12, 1).pow(4);
        let n = x.normalize();
        assert_eq!(n.order(), 3);
        assert_eq!(n, CyclotomicNumber::root_of_unity(3, 1));
        // a rational hidden at order 8
        let y = CyclotomicNumber::root_of_unity(8, 1).pow(8).scale(&rat(7, 2));
        assert_eq!(y.normalize().order(), 1);
    }

    #[test]
    fn unit_rational_forms() {
        let x = CyclotomicNumber::root_of_unity(3, 2).scale(&rat(5, 2));
        assert_eq!(x.unit_rational_form(), Some((2, 3, rat(5, 2))));
        let neg = CyclotomicNumber::from_rational(rat(-4, 1));
        assert_eq!(neg.unit_rational_form(), Some((1, 2, rat(4, 1))));
        // -ω_3 = ω_6^5 · 1
        let y = CyclotomicNumber::root_of_unity(3, 1).neg();
        assert_eq!(y.unit_rational_form(), Some((5, 6, rat(1, 1))));
        // 1 + ω_5 is not unit times rational
        let z = CyclotomicNumber::one().add(&CyclotomicNumber::root_of_unity(5, 1));
        assert_eq!(z.unit_rational_form(), None);
    }

    #[test]
    fn nth_roots() {
        // square root of ω_3^2 is ω_3 (principal: ω_6^2)
        let x = CyclotomicNumber::root_of_unity(3, 2);
        let r = x.nth_root(2).unwrap();
        assert_eq!(r.mul(&r), x);
        assert_eq!(r, CyclotomicNumber::root_of_unity(3, 1));
        // 4th root of 16 is 2
        let s = CyclotomicNumber::from_integer(16).nth_root(4).unwrap();
        assert_eq!(s, CyclotomicNumber::from_integer(2));
        // square root of -4 exists as 2ω_4
        let t = CyclotomicNumber::from_integer(-4).nth_root(2).unwrap();
        assert_eq!(t.mul(&t), CyclotomicNumber::from_integer(-4));
        // square root of 2 is not unit times rational: absent
        assert_eq!(CyclotomicNumber::from_integer(2).nth_root(2), None);
    }

    #[test]
    fn conjugation() {
        let w = CyclotomicNumber::root_of_unity(5, 1);
        assert_eq!(w.conj(), CyclotomicNumber::root_of_unity(5, 4));
        let x = w.add(&w.conj()); // real value stays fixed
        assert_eq!(x.conj(), x);
    }

    #[test]
    fn display_form() {
        let x = CyclotomicNumber::root_of_unity(6, 1)
            .scale(&rat(1, 2))
            .add(&CyclotomicNumber::from_rational(rat(-3, 1)));
        assert_eq!(x.to_string(), "-3 + 1/2*w(1/6)");
    }

    #[test]
    fn complex_embedding_sanity() {
        let w8 = CyclotomicNumber::root_of_unity(8, 1);
        let sqrt2 = w8.add(&w8.conj());
        let (re, im) = sqrt2.complex_approx();
        assert!((re - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(im.abs() < 1e-12);
        assert!(BigRational::from_f64(0.5).unwrap() == rat(1, 2));
    }
}
