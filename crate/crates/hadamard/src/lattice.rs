//! Multiplicative lattices of radical roots.
//!
//! Given the roots appearing in a problem, this module finds a basis
//! γ_1, ..., γ_r of the multiplicative group generated by their radical
//! parts, so that every root is ω_N^t · ∏ γ_j^(m_j) with integer m_j.
//! The basis is computed as a column Hermite form of the prime-exponent
//! matrix: deterministic, with pivots chosen by smallest absolute value.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::lcm_u64;
use crate::radical::RadicalRoot;

#[derive(Clone, Debug)]
pub struct MultBasis {
    /// Sorted primes supporting the lattice.
    primes: Vec<u64>,
    /// lcm of the torsion orders of the roots the basis was built from.
    torsion_order: u64,
    /// Echelon basis columns: exponent vectors over `primes`, pivot rows
    /// strictly increasing, pivot entries positive.
    basis: Vec<Vec<BigRational>>,
    /// Pivot row of each basis column.
    pivots: Vec<usize>,
}

impl MultBasis {
    pub fn new(roots: &[RadicalRoot]) -> Self {
        let mut primes: Vec<u64> = roots
            .iter()
            .flat_map(|r| r.radicals().keys().copied())
            .collect();
        primes.sort_unstable();
        primes.dedup();
        let torsion_order = roots.iter().fold(1, |acc, r| lcm_u64(acc, r.torsion_order()));

        // clear denominators to an integer matrix
        let mut denom: i64 = 1;
        for r in roots {
            for e in r.radicals().values() {
                denom = num_integer::lcm(denom, *e.denom());
            }
        }
        let cols: Vec<Vec<BigInt>> = roots
            .iter()
            .map(|r| {
                primes
                    .iter()
                    .map(|p| {
                        r.radicals()
                            .get(p)
                            .map(|e| BigInt::from(e.numer() * (denom / e.denom())))
                            .unwrap_or_else(BigInt::zero)
                    })
                    .collect()
            })
            .collect();

        let (int_basis, pivots) = column_hermite(cols, primes.len());
        let d = BigRational::from_integer(BigInt::from(denom));
        let basis = int_basis
            .into_iter()
            .map(|col| col.into_iter().map(|x| BigRational::from_integer(x) / &d).collect())
            .collect();
        Self { primes, torsion_order, basis, pivots }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion_order
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The basis elements as (torsion-free) radical roots.
    pub fn basis_roots(&self) -> Vec<RadicalRoot> {
        self.basis
            .iter()
            .map(|col| {
                let map = self
                    .primes
                    .iter()
                    .zip(col)
                    .filter(|(_, e)| !e.is_zero())
                    .map(|(p, e)| (*p, to_rational64(e)))
                    .collect();
                RadicalRoot::new(0, 1, map)
            })
            .collect()
    }

    /// Write `root` as ω_N^t · ∏ γ_j^(m_j): returns (t, m) with N the
    /// lattice torsion order, or None if the root lies outside the lattice.
    pub fn represent(&self, root: &RadicalRoot) -> Option<(u64, Vec<i64>)> {
        let (j, m) = root.torsion();
        if self.torsion_order % m != 0 {
            return None;
        }
        let t = j * (self.torsion_order / m);

        let mut target: Vec<BigRational> = self
            .primes
            .iter()
            .map(|p| {
                root.radicals()
                    .get(p)
                    .map(|e| {
                        BigRational::new(BigInt::from(*e.numer()), BigInt::from(*e.denom()))
                    })
                    .unwrap_or_else(BigRational::zero)
            })
            .collect();
        // a prime outside the support cannot be represented
        for (p, e) in root.radicals() {
            if !e.is_zero() && !self.primes.contains(p) {
                return None;
            }
        }

        let mut coeffs = Vec::with_capacity(self.basis.len());
        for (col, &piv) in self.basis.iter().zip(&self.pivots) {
            let q = &target[piv] / &col[piv];
            if !q.is_integer() {
                return None;
            }
            for (t, c) in target.iter_mut().zip(col) {
                *t -= &q * c;
            }
            coeffs.push(q.to_integer().to_i64()?);
        }
        if target.iter().any(|t| !t.is_zero()) {
            return None;
        }
        Some((t, coeffs))
    }

    /// Replace each basis element γ_j by γ_j^(1/d); representations of the
    /// original roots pick up a factor d in every exponent.
    pub fn saturate(&self, d: u64) -> Self {
        assert!(d >= 1);
        let big = BigRational::from_integer(BigInt::from(d));
        Self {
            primes: self.primes.clone(),
            torsion_order: self.torsion_order,
            basis: self
                .basis
                .iter()
                .map(|col| col.iter().map(|e| e / &big).collect())
                .collect(),
            pivots: self.pivots.clone(),
        }
    }
}

fn to_rational64(r: &BigRational) -> Rational64 {
    let n = r.numer().to_i64().expect("lattice exponent exceeds i64");
    let d = r.denom().to_i64().expect("lattice exponent exceeds i64");
    Rational64::new(n, d)
}

/// Column-operation Hermite reduction. Returns the nonzero echelon columns
/// and their pivot rows. Deterministic: within a row, the pivot candidate is
/// the column with smallest nonzero absolute value (earliest on ties), and
/// pivot entries are made positive.
fn column_hermite(mut cols: Vec<Vec<BigInt>>, rows: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut fixed = 0usize;
    let mut pivots = Vec::new();
    for r in 0..rows {
        loop {
            let active: Vec<usize> = (fixed..cols.len())
                .filter(|&j| !cols[j][r].is_zero())
                .collect();
            match active.len() {
                0 => break,
                1 => {
                    let j = active[0];
                    if cols[j][r].is_negative() {
                        for x in cols[j].iter_mut() {
                            *x = -x.clone();
                        }
                    }
                    cols.swap(fixed, j);
                    pivots.push(r);
                    fixed += 1;
                    break;
                }
                _ => {
                    let jmin = *active
                        .iter()
                        .min_by_key(|&&j| cols[j][r].magnitude().clone())
                        .unwrap();
                    for &j in &active {
                        if j == jmin {
                            continue;
                        }
                        let q = &cols[j][r] / &cols[jmin][r];
                        if q.is_zero() {
                            continue;
                        }
                        for i in 0..rows {
                            let delta = &q * &cols[jmin][i];
                            cols[j][i] -= delta;
                        }
                    }
                }
            }
        }
    }
    cols.truncate(fixed);
    (cols, pivots)
}
