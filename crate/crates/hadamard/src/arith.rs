//! Small number-theory helpers shared across the crate: factorization,
//! modular arithmetic over `u64` primes, CRT, and exact roots of rationals.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Largest factor we will find by trial division before giving up.
/// Radicands in sequence roots are expected to stay far below this.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / a.gcd(&b) * b
    }
}

/// Euler totient of `n` by trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = 1u64;
    for (p, e) in factor_u64(n) {
        phi *= (p - 1) * p.pow(e - 1);
    }
    phi
}

/// Prime factorization of a `u64` by trial division (inputs here are small).
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor_u64(n) {
        let prev = ds.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            for d in &prev {
                ds.push(d * pe);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Deterministic Miller-Rabin for `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    // These witnesses are known to be sufficient for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The next prime strictly greater than `n`.
pub fn next_prime(mut n: u64) -> u64 {
    loop {
        n += 1;
        if is_prime_u64(n) {
            return n;
        }
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` mod `m` when `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(((t % m as i128 + m as i128) % m as i128) as u64)
}

/// Multiplicative order of `a` mod prime `q` (requires `gcd(a, q) = 1`).
pub fn mult_order(a: u64, q: u64) -> u64 {
    debug_assert!(a % q != 0);
    let group = q - 1;
    let mut ord = group;
    for (p, _) in factor_u64(group) {
        while ord % p == 0 && pow_mod(a, ord / p, q) == 1 {
            ord /= p;
        }
    }
    ord
}

/// Smallest primitive root mod prime `q`.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let fs = factor_u64(q - 1);
    'g: for g in 2..q {
        for (p, _) in &fs {
            if pow_mod(g, (q - 1) / p, q) == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("no primitive root found for prime {q}");
}

/// Combine congruences x ≡ r1 (mod m1), x ≡ r2 (mod m2).
/// Returns the merged (modulus, residue) or None if inconsistent.
pub fn crt_combine(m1: u64, r1: u64, m2: u64, r2: u64) -> Option<(u64, u64)> {
    let g = gcd_u64(m1, m2);
    let (r1, r2) = (r1 % m1, r2 % m2);
    if r1 % g != r2 % g {
        return None;
    }
    let l = m1 / g * m2;
    // x = r1 + m1 * k with k ≡ (r2 - r1)/g * inv(m1/g) (mod m2/g)
    let m2g = m2 / g;
    let diff = ((r2 as i128 - r1 as i128).rem_euclid(m2 as i128)) as u64 / g;
    let k = mul_mod(diff % m2g, inv_mod((m1 / g) % m2g, m2g)?, m2g);
    Some((l, (r1 as u128 + m1 as u128 * k as u128) as u64 % l as u128 as u64))
}

/// Factor a positive BigInt over u64 primes by trial division.
/// Fails (None) if a factor above `TRIAL_DIVISION_BOUND` squared remains composite.
pub fn factor_bigint(n: &BigInt) -> Option<Vec<(u64, u32)>> {
    debug_assert!(n.is_positive());
    let mut n: BigUint = n.to_biguint()?;
    let one = BigUint::one();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        if (&n % &bp).is_zero() {
            let mut e = 0u32;
            while (&n % &bp).is_zero() {
                n /= &bp;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > one {
        // remainder is prime if it is below the square of the bound
        let r = u64::try_from(&n).ok()?;
        if !is_prime_u64(r) {
            return None;
        }
        out.push((r, 1));
    }
    Some(out)
}

/// Exact d-th root of a nonnegative rational, if it is rational.
pub fn nth_root_rational(x: &BigRational, d: u32) -> Option<BigRational> {
    debug_assert!(d >= 1);
    if x.is_negative() {
        return None;
    }
    let num = x.numer().to_biguint()?;
    let den = x.denom().to_biguint()?;
    let rn = num.nth_root(d);
    let rd = den.nth_root(d);
    if rn.pow(d) == num && rd.pow(d) == den {
        Some(BigRational::new(BigInt::from(rn), BigInt::from(rd)))
    } else {
        None
    }
}

/// Render a rational as `p` or `p/q`.
pub fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    #[test]
    fn phi_and_divisors() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn primality_and_orders() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(97));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert_eq!(next_prime(2), 3);
        assert_eq!(mult_order(2, 5), 4);
        assert_eq!(mult_order(4, 5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(inv_mod(4, 5), Some(4));
    }

    #[test]
    fn crt_cases() {
        assert_eq!(crt_combine(3, 2, 5, 3), Some((15, 8)));
        assert_eq!(crt_combine(4, 1, 6, 3), Some((12, 9)));
        assert_eq!(crt_combine(4, 1, 6, 2), None);
    }

    #[test]
    fn bigint_factoring() {
        let n = BigInt::from(720);
        assert_eq!(factor_bigint(&n), Some(vec![(2, 4), (3, 2), (5, 1)]));
    }

    #[test]
    fn rational_roots() {
        let x = BigRational::from_f64(2.25).unwrap(); // 9/4
        assert_eq!(
            nth_root_rational(&x, 2),
            Some(BigRational::new(BigInt::from(3), BigInt::from(2)))
        );
        assert_eq!(nth_root_rational(&BigRational::from_integer(8.into()), 3)
            .map(|r| r.to_string()), Some("2".into()));
        assert_eq!(nth_root_rational(&BigRational::from_integer(2.into()), 2), None);
    }
}
