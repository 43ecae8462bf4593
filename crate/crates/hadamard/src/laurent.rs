//! Laurent polynomials encoding sequences over a multiplicative basis.
//!
//! A sequence Σ A_i(n)·γ^(v_i) with torsion-free roots in the group generated
//! by γ_1…γ_r becomes a polynomial in X_0 (the index variable, exponents ≥ 0)
//! and Laurent variables X_1…X_r (one per basis element, exponents in ℤ).
//! Coefficients are cyclotomic numbers. Terms are kept in a map under the
//! graded-lexicographic order with X_0 > X_1 > …, so leading terms, equality,
//! and the zero test are canonical.
//!
//! `YPoly` stacks d+1 Laurent coefficients into a polynomial in one more
//! variable Y; the solver's equations live there.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{pow_mod, primitive_root};
use crate::cyclotomic::CyclotomicNumber;
use crate::lattice::MultBasis;
use crate::radical::RadicalRoot;
use crate::scalar::Scalar;
use crate::sequences::{ExpPoly, Poly};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("root {0} is outside the multiplicative group of the basis")]
    NotInGroup(String),
    #[error("root {0} carries a torsion part; split into residue classes first")]
    TorsionPresent(String),
    #[error("coefficient {0} is not cyclotomic")]
    CoefficientNotCyclotomic(String),
    #[error("substitution twist {0} leaves the cyclotomic field")]
    NonCyclotomicTwist(String),
    #[error("prime {q} collides with the data: {what}")]
    BadPrime { q: u64, what: String },
    #[error("vectors are linearly dependent")]
    DependentVectors,
}

// ---------------------------------------------------------------------------
// monomials
// ---------------------------------------------------------------------------

/// Exponent vector (X_0, X_1, …, X_r). Ordered by total degree, then
/// lexicographically with X_0 most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(Vec<i64>);

impl Mono {
    pub fn new(exps: Vec<i64>) -> Self {
        Self(exps)
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

// ---------------------------------------------------------------------------
// Laurent polynomials
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Mono, CyclotomicNumber>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1);
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: CyclotomicNumber) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, CyclotomicNumber::one())
    }

    pub fn from_integer(nvars: usize, n: i64) -> Self {
        Self::constant(nvars, CyclotomicNumber::from_integer(n))
    }

    /// The variable X_i.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(nvars, exps, CyclotomicNumber::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<i64>, c: CyclotomicNumber) -> Self {
        assert_eq!(exps.len(), nvars);
        debug_assert!(exps[0] >= 0, "X_0 exponents must stay nonnegative");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(exps), c);
        }
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &CyclotomicNumber)> {
        self.terms.iter()
    }

    /// Largest term under the graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Mono, &CyclotomicNumber)> {
        self.terms.iter().next_back()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .leading()
                .map(|(m, c)| m.0.iter().all(|e| *e == 0) && c.is_one())
                .unwrap_or(false)
    }

    pub fn as_constant(&self) -> Option<CyclotomicNumber> {
        if self.is_zero() {
            return Some(CyclotomicNumber::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.leading().unwrap();
            if m.0.iter().all(|e| *e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    fn add_term(&mut self, exps: Vec<i64>, c: CyclotomicNumber) {
        debug_assert_eq!(exps.len(), self.nvars);
        debug_assert!(exps[0] >= 0, "X_0 exponents must stay nonnegative");
        if c.is_zero() {
            return;
        }
        let key = Mono(exps);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        Self { nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<i64> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect();
        Self { nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Per-variable (min, max) exponent ranges; None when zero.
    pub fn exponent_box(&self) -> Option<Vec<(i64, i64)>> {
        let mut iter = self.terms.keys();
        let first = iter.next()?;
        let mut lo = first.0.clone();
        let mut hi = first.0.clone();
        for m in iter {
            for (i, e) in m.0.iter().enumerate() {
                lo[i] = lo[i].min(*e);
                hi[i] = hi[i].max(*e);
            }
        }
        Some(lo.into_iter().zip(hi).collect())
    }

    /// X_i ↦ X_i^(ds[i-1]) for the lattice variables; X_0 is untouched.
    pub fn subst_powers(&self, ds: &[i64]) -> Self {
        assert_eq!(ds.len(), self.nvars - 1);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            for (i, d) in ds.iter().enumerate() {
                exps[i + 1] *= d;
            }
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Uniform power substitution X_i ↦ X_i^d on the lattice variables.
    pub fn subst_power(&self, d: u64) -> Self {
        self.subst_powers(&vec![d as i64; self.nvars - 1])
    }

    /// Monomial substitution X_i ↦ ∏_j X_j^(map[i−1][j−1]) on the lattice
    /// variables; X_0 is untouched. Row i is the multiindex for X_i.
    pub fn subst_monomial(&self, map: &[Vec<i64>]) -> Self {
        assert_eq!(map.len(), self.nvars - 1);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0i64; self.nvars];
            exps[0] = m.0[0];
            for (i, row) in map.iter().enumerate() {
                assert_eq!(row.len(), self.nvars - 1);
                let e = m.0[i + 1];
                if e == 0 {
                    continue;
                }
                for (j, a) in row.iter().enumerate() {
                    exps[j + 1] += e * a;
                }
            }
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Pass to the progression n = a·m + b: X_0 ↦ a·X_0 + b and
    /// X_i ↦ γ_i^b · X_i^a, with γ_i the basis root behind X_i.
    pub fn subst_progression(
        &self,
        a: u64,
        b: u64,
        gammas: &[RadicalRoot],
    ) -> Result<Self, LaurentError> {
        assert!(a >= 1);
        assert_eq!(gammas.len(), self.nvars - 1);
        let a_rat = BigRational::from_integer(BigInt::from(a));
        let b_rat = BigRational::from_integer(BigInt::from(b));
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            // (a·X_0 + b)^(e_0) expanded as dense coefficients in X_0
            let e0 = m.0[0] as usize;
            let mut x0 = vec![BigRational::one()];
            for _ in 0..e0 {
                let mut next = vec![BigRational::zero(); x0.len() + 1];
                for (k, v) in x0.iter().enumerate() {
                    next[k] += v * &b_rat;
                    next[k + 1] += v * &a_rat;
                }
                x0 = next;
            }
            // lattice part: exponent scaling and torsion-free twist
            let mut twist = c.clone();
            let mut lattice = vec![0i64; self.nvars - 1];
            for (i, g) in gammas.iter().enumerate() {
                let e = m.0[i + 1];
                lattice[i] = a as i64 * e;
                if e != 0 && b != 0 {
                    let factor = g.pow_int(b as i64 * e);
                    let value = factor.cyclotomic_value().ok_or_else(|| {
                        LaurentError::NonCyclotomicTwist(format!("{factor}"))
                    })?;
                    twist = twist.mul(&value);
                }
            }
            for (k, v) in x0.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let mut exps = Vec::with_capacity(self.nvars);
                exps.push(k as i64);
                exps.extend_from_slice(&lattice);
                out.add_term(exps, twist.scale(v));
            }
        }
        Ok(out)
    }

    /// Factor out the per-variable minimum exponents: self = X^shift · poly.
    fn split_monomial_content(&self) -> (Vec<i64>, Self) {
        let boxes = match self.exponent_box() {
            Some(b) => b,
            None => return (vec![0; self.nvars], self.clone()),
        };
        let shift: Vec<i64> = boxes.iter().map(|(lo, _)| *lo).collect();
        let mut core = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let exps: Vec<i64> = m.0.iter().zip(&shift).map(|(e, s)| e - s).collect();
            core.terms.insert(Mono(exps), c.clone());
        }
        (shift, core)
    }

    /// Exact quotient in the Laurent ring, or None when it does not divide.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let (fs, f0) = self.split_monomial_content();
        let (gs, g0) = divisor.split_monomial_content();
        // long division in the polynomial cone; exactness makes every leading
        // term divisible, so any failure means "no quotient"
        let (glt, glc) = {
            let (m, c) = g0.leading().unwrap();
            (m.clone(), c.clone())
        };
        let glc_inv = glc.inverse();
        let mut quot = Self::zero(self.nvars);
        let mut rem = f0;
        while !rem.is_zero() {
            let (rlt, rlc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let mut exps = Vec::with_capacity(self.nvars);
            for (a, b) in rlt.0.iter().zip(&glt.0) {
                let e = a - b;
                if e < 0 {
                    return None;
                }
                exps.push(e);
            }
            let coeff = rlc.mul(&glc_inv);
            let term = Self::monomial(self.nvars, exps, coeff);
            rem = rem.sub(&term.mul(&g0));
            quot = quot.add(&term);
        }
        // reapply the monomial parts; X_0 must stay in the polynomial cone
        let shift: Vec<i64> = fs.iter().zip(&gs).map(|(a, b)| a - b).collect();
        let mut out = Self::zero(self.nvars);
        for (m, c) in &quot.terms {
            let exps: Vec<i64> = m.0.iter().zip(&shift).map(|(e, s)| e + s).collect();
            if exps[0] < 0 {
                return None;
            }
            out.terms.insert(Mono(exps), c.clone());
        }
        Some(out)
    }

    /// Exact d-th root when one exists: peel the root of the leading term,
    /// then grow the tail greedily; every candidate is verified exactly.
    pub fn dth_root(&self, d: u32) -> Option<Self> {
        assert!(d >= 1);
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if d == 1 {
            return Some(self.clone());
        }
        let (flt, flc) = self.leading().unwrap();
        let lead_exps: Vec<i64> = flt
            .0
            .iter()
            .map(|e| if e % d as i64 == 0 { Some(e / d as i64) } else { None })
            .collect::<Option<_>>()?;
        let lead_coeff = flc.nth_root(d)?;
        // iteration cap: the root's support fits in box(self)/d
        let cap = self
            .exponent_box()
            .unwrap()
            .iter()
            .map(|(lo, hi)| ((hi - lo) as u64 / d as u64 + 2).min(64))
            .product::<u64>()
            .min(4096)
            + 4;
        let denom = lead_coeff.pow(d as u64 - 1).scale(&BigRational::from_integer(BigInt::from(d)));
        let denom_inv = denom.inverse();
        let mut root = Self::monomial(self.nvars, lead_exps.clone(), lead_coeff);
        for _ in 0..cap {
            let diff = self.sub(&root.pow(d));
            let (dlt, dlc) = match diff.leading() {
                None => return Some(root),
                Some((m, c)) => (m.clone(), c.clone()),
            };
            let exps: Vec<i64> =
                dlt.0.iter().zip(&lead_exps).map(|(e, l)| e - l * (d as i64 - 1)).collect();
            if exps[0] < 0 {
                return None;
            }
            root.add_term(exps, dlc.mul(&denom_inv));
        }
        None
    }

    /// Exact value at a cyclotomic point; None when a variable with a
    /// negative exponent is assigned zero.
    pub fn eval_at(&self, vals: &[CyclotomicNumber]) -> Option<CyclotomicNumber> {
        assert_eq!(vals.len(), self.nvars);
        let mut acc = CyclotomicNumber::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (e, v) in m.0.iter().zip(vals) {
                if *e == 0 {
                    continue;
                }
                if v.is_zero() {
                    if *e < 0 {
                        return None;
                    }
                    term = CyclotomicNumber::zero();
                    break;
                }
                let p = v.pow(e.unsigned_abs());
                term = if *e > 0 { term.mul(&p) } else { term.mul(&p.inverse()) };
            }
            acc = acc.add(&term);
        }
        Some(acc)
    }

    /// Value modulo q at the given variable assignments.
    pub fn eval_mod_q(&self, q: u64, assignments: &[u64]) -> Result<u64, LaurentError> {
        assert_eq!(assignments.len(), self.nvars);
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut term = cyc_mod_q(c, q)?;
            for (e, v) in m.0.iter().zip(assignments) {
                if *e == 0 || term == 0 {
                    continue;
                }
                let v = v % q;
                if v == 0 {
                    if *e < 0 {
                        return Err(LaurentError::BadPrime {
                            q,
                            what: "zero assigned to a negative exponent".into(),
                        });
                    }
                    term = 0;
                    continue;
                }
                let p = pow_mod(v, e.unsigned_abs(), q);
                let p = if *e > 0 {
                    p
                } else {
                    crate::arith::inv_mod(p, q).expect("nonzero residue mod a prime")
                };
                term = mul_mod_u64(term, p, q);
            }
            acc = (acc + term) % q;
        }
        Ok(acc)
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("X{i}")),
                    _ => factors.push(format!("X{i}^{e}")),
                }
            }
            let body = if factors.is_empty() {
                format!("({c})")
            } else if c.is_one() {
                factors.join("*")
            } else {
                format!("({c})*{}", factors.join("*"))
            };
            parts.push(body);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

// ---------------------------------------------------------------------------
// conversions to and from exponential polynomials
// ---------------------------------------------------------------------------

/// Encode a torsion-free exponential polynomial over the basis.
pub fn exppoly_to_laurent(b: &ExpPoly, basis: &MultBasis) -> Result<LaurentPoly, LaurentError> {
    let nvars = basis.rank() + 1;
    let mut out = LaurentPoly::zero(nvars);
    for (root, poly) in b.terms() {
        let (t, coords) = basis
            .represent(root)
            .ok_or_else(|| LaurentError::NotInGroup(format!("{root}")))?;
        if t != 0 {
            return Err(LaurentError::TorsionPresent(format!("{root}")));
        }
        for (k, s) in poly.coeffs().iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let c = s
                .as_cyclotomic()
                .ok_or_else(|| LaurentError::CoefficientNotCyclotomic(format!("{s}")))?;
            let mut exps = Vec::with_capacity(nvars);
            exps.push(k as i64);
            exps.extend_from_slice(&coords);
            out.add_term(exps, c);
        }
    }
    Ok(out)
}

/// Decode back: X_0 ↦ n, X_i ↦ γ_i^n.
pub fn laurent_to_exppoly(f: &LaurentPoly, basis: &MultBasis) -> ExpPoly {
    let gammas = basis.basis_roots();
    assert_eq!(gammas.len(), f.nvars() - 1);
    let mut grouped: BTreeMap<RadicalRoot, Vec<Scalar>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut root = RadicalRoot::one();
        for (g, e) in gammas.iter().zip(&m.exps()[1..]) {
            if *e != 0 {
                root = root.mul(&g.pow_int(*e));
            }
        }
        let k = m.exps()[0] as usize;
        let coeffs = grouped.entry(root).or_default();
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Scalar::zero());
        }
        coeffs[k] = coeffs[k].add(&Scalar::from_cyclotomic(c.clone()));
    }
    ExpPoly::from_terms(
        grouped.into_iter().map(|(root, coeffs)| (root, Poly::from_scalars(coeffs))).collect(),
    )
}

// ---------------------------------------------------------------------------
// sublattice certificates
// ---------------------------------------------------------------------------

/// For independent integer vectors B (rows), return (M, B') with
/// B'·B = M·Id and M = |det B|.
pub fn sublattice_normalize(
    vectors: &[Vec<i64>],
) -> Result<(BigInt, Vec<Vec<BigInt>>), LaurentError> {
    let r = vectors.len();
    assert!(r >= 1);
    assert!(vectors.iter().all(|v| v.len() == r), "square matrix required");
    // Gauss-Jordan over the rationals: [B | I] → [I | B⁻¹], tracking det
    let mut aug: Vec<Vec<BigRational>> = vectors
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut long: Vec<BigRational> =
                row.iter().map(|e| BigRational::from_integer(BigInt::from(*e))).collect();
            long.extend((0..r).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            long
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..r {
        let pivot = (col..r).find(|i| !aug[*i][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return Err(LaurentError::DependentVectors),
        };
        if pivot != col {
            aug.swap(pivot, col);
            det = -det;
        }
        let p = aug[col][col].clone();
        det *= &p;
        for x in aug[col].iter_mut() {
            *x /= &p;
        }
        for i in 0..r {
            if i == col || aug[i][col].is_zero() {
                continue;
            }
            let factor = aug[i][col].clone();
            for j in 0..2 * r {
                let delta = &factor * &aug[col][j];
                aug[i][j] -= delta;
            }
        }
    }
    let m = det.to_integer().abs();
    let m_rat = BigRational::from_integer(m.clone());
    let cert: Vec<Vec<BigInt>> = aug
        .iter()
        .map(|row| {
            row[r..]
                .iter()
                .map(|x| {
                    let v = x * &m_rat;
                    debug_assert!(v.is_integer(), "scaled inverse entries are integral");
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    // exact certificate check: B'·B = M·Id
    for i in 0..r {
        for j in 0..r {
            let mut acc = BigInt::zero();
            for (k, row) in vectors.iter().enumerate() {
                acc += &cert[i][k] * BigInt::from(row[j]);
            }
            let expect = if i == j { m.clone() } else { BigInt::zero() };
            assert_eq!(acc, expect, "certificate identity must hold exactly");
        }
    }
    Ok((m, cert))
}

// ---------------------------------------------------------------------------
// reduction modulo q
// ---------------------------------------------------------------------------

/// Image of a cyclotomic number in F_q: ω_M ↦ h^((q−1)/M) for the smallest
/// primitive root h. Fails when q divides a denominator or q ≢ 1 (mod M).
pub fn cyc_mod_q(c: &CyclotomicNumber, q: u64) -> Result<u64, LaurentError> {
    let c = c.normalize();
    let m = c.order();
    let rational_image = |r: &BigRational| -> Result<u64, LaurentError> {
        let den = (r.denom() % BigInt::from(q)).to_u64().unwrap();
        if den == 0 {
            return Err(LaurentError::BadPrime { q, what: format!("denominator of {r}") });
        }
        let num = ((r.numer() % BigInt::from(q) + BigInt::from(q)) % BigInt::from(q))
            .to_u64()
            .unwrap();
        Ok(mul_mod_u64(num, crate::arith::inv_mod(den, q).unwrap(), q))
    };
    if m == 1 {
        return rational_image(&c.as_rational().unwrap());
    }
    if (q - 1) % m != 0 {
        return Err(LaurentError::BadPrime { q, what: format!("q is not 1 mod {m}") });
    }
    let w = pow_mod(primitive_root(q), (q - 1) / m, q);
    let mut acc = 0u64;
    let mut wk = 1u64;
    for coord in c.coords() {
        if !coord.is_zero() {
            acc = (acc + mul_mod_u64(rational_image(coord)?, wk, q)) % q;
        }
        wk = mul_mod_u64(wk, w, q);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// polynomials in Y over the Laurent ring
// ---------------------------------------------------------------------------

/// Σ coeffs[j]·Y^j with Laurent-polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YPoly {
    coeffs: Vec<LaurentPoly>,
}

impl YPoly {
    /// Trims leading zeros; at least one nonzero coefficient is required.
    pub fn new(mut coeffs: Vec<LaurentPoly>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(LaurentPoly::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    /// Monic polynomial Y^d + Σ lower[j]·Y^j.
    pub fn monic(lower: Vec<LaurentPoly>) -> Self {
        assert!(!lower.is_empty());
        let nvars = lower[0].nvars();
        let mut coeffs = lower;
        coeffs.push(LaurentPoly::one(nvars));
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.coeffs[0].nvars()
    }

    pub fn coeff(&self, j: usize) -> &LaurentPoly {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(LaurentPoly::is_one).unwrap_or(false)
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self::new(self.coeffs.iter().map(f).collect())
    }

    /// Substitute a Laurent polynomial for Y.
    pub fn eval_y(&self, y: &LaurentPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero(self.nvars());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(y).add(c);
        }
        acc
    }

    /// Coefficient-wise value mod q: a univariate polynomial over F_q in Y,
    /// dense, lowest degree first.
    pub fn reduce_mod_q(&self, q: u64, assignments: &[u64]) -> Result<Vec<u64>, LaurentError> {
        self.coeffs.iter().map(|c| c.eval_mod_q(q, assignments)).collect()
    }
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let y = match j {
                0 => String::new(),
                1 => "*Y".to_string(),
                _ => format!("*Y^{j}"),
            };
            if j > 0 && c.is_one() {
                parts.push(y[1..].to_string());
            } else {
                parts.push(format!("({c}){y}"));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}
