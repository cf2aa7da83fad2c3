//! Exact arithmetic in `Z[ζ_M]`, represented in `Z[x]/(x^M - 1)`.
//!
//! Values are compared by reducing modulo the cyclotomic polynomial `Φ_M`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("cyclotomic moduli differ: {0} vs {1}")]
    ModulusMismatch(usize, usize),
}

/// Element `Σ c_j ζ_M^j` of the cyclotomic integers.
#[derive(Debug, Clone)]
pub struct CycInt {
    modulus: usize,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(modulus: usize) -> CycInt {
        assert!(modulus >= 1, "cyclotomic modulus must be positive");
        CycInt { modulus, coeffs: vec![BigInt::zero(); modulus] }
    }

    pub fn from_integer(modulus: usize, n: impl Into<BigInt>) -> CycInt {
        let mut out = CycInt::zero(modulus);
        out.coeffs[0] = n.into();
        out
    }

    /// The monomial `ζ_M^{e mod M}`.
    pub fn root(modulus: usize, exponent: i64) -> CycInt {
        let mut out = CycInt::zero(modulus);
        let e = exponent.rem_euclid(modulus as i64) as usize;
        out.coeffs[e] = BigInt::one();
        out
    }

    /// Builds `Σ counts[j] ζ^j`; `counts.len()` is the modulus.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> CycInt {
        assert!(!coeffs.is_empty(), "cyclotomic modulus must be positive");
        CycInt { modulus: coeffs.len(), coeffs }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn check(&self, other: &CycInt) -> Result<(), CyclotomicError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(CyclotomicError::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt, CyclotomicError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { modulus: self.modulus, coeffs })
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt, CyclotomicError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { modulus: self.modulus, coeffs })
    }

    /// Cyclic convolution of the coefficient vectors.
    pub fn mul(&self, other: &CycInt) -> Result<CycInt, CyclotomicError> {
        self.check(other)?;
        let m = self.modulus;
        let mut coeffs = vec![BigInt::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                coeffs[(i + j) % m] += a * b;
            }
        }
        Ok(CycInt { modulus: m, coeffs })
    }

    /// Canonical representative modulo `Φ_M`, of degree below `φ(M)`.
    pub fn reduced(&self) -> Vec<BigInt> {
        let phi = cyclotomic_polynomial(self.modulus);
        poly_rem_monic(&self.coeffs, &phi)
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(Zero::is_zero)
    }

    /// `Some(n)` if this value equals the rational integer `n`.
    pub fn as_integer(&self) -> Option<BigInt> {
        let mut r = self.reduced();
        r.resize(r.len().max(1), BigInt::zero());
        if r[1..].iter().all(Zero::is_zero) {
            Some(r.swap_remove(0))
        } else {
            None
        }
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }
}

impl Eq for CycInt {}

/// Remainder of `a` by the monic `m`; result has `deg m` coefficients.
fn poly_rem_monic(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let deg = m.len() - 1;
    let mut a = a.to_vec();
    while a.len() > deg {
        let lead = a.pop().unwrap();
        if !lead.is_zero() {
            let shift = a.len() - deg;
            for (i, c) in m[..deg].iter().enumerate() {
                a[shift + i] -= &lead * c;
            }
        }
    }
    a.resize(deg, BigInt::zero());
    a
}

/// Exact quotient of `a` by the monic `m`.
fn poly_div_monic(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let deg = m.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(deg)];
    while rem.len() > deg {
        let lead = rem.pop().unwrap();
        let shift = rem.len() - deg;
        for (i, c) in m[..deg].iter().enumerate() {
            rem[shift + i] -= &lead * c;
        }
        quot[shift] = lead;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Φ_M`, coefficients from the constant term, computed as
/// `(x^M - 1) / Π_{d | M, d < M} Φ_d`.
pub fn cyclotomic_polynomial(modulus: usize) -> Arc<Vec<BigInt>> {
    assert!(modulus >= 1);
    if let Some(phi) = cache().lock().unwrap().get(&modulus) {
        return phi.clone();
    }
    let mut num = vec![BigInt::zero(); modulus + 1];
    num[0] = -BigInt::one();
    num[modulus] = BigInt::one();
    for d in (1..modulus).filter(|d| modulus.is_multiple_of(*d)) {
        num = poly_div_monic(&num, &cyclotomic_polynomial(d));
    }
    let phi = Arc::new(num);
    cache().lock().unwrap().entry(modulus).or_insert(phi).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn roots() {
        assert_eq!(CycInt::root(6, 0), CycInt::from_integer(6, 1));
        assert_eq!(CycInt::root(6, 7), CycInt::root(6, 1));
        assert_eq!(CycInt::root(6, -5), CycInt::root(6, 1));
        assert_eq!(CycInt::root(1, 5).as_integer(), Some(BigInt::one()));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = (0..3).fold(CycInt::zero(3), |acc, j| acc.add(&CycInt::root(3, j)).unwrap());
        assert_eq!(s.as_integer(), Some(BigInt::zero()));
        assert!(s.is_zero());
    }

    #[test]
    fn products_and_sums() {
        let p = CycInt::root(4, 1).mul(&CycInt::root(4, 3)).unwrap();
        assert_eq!(p.as_integer(), Some(BigInt::one()));
        let s = CycInt::root(6, 2)
            .add(&CycInt::root(6, 4))
            .unwrap()
            .add(&CycInt::from_integer(6, 1))
            .unwrap();
        assert_eq!(s.as_integer(), Some(BigInt::zero()));
    }

    #[test]
    fn non_integers() {
        assert_eq!(CycInt::root(6, 1).as_integer(), None);
        assert_eq!(CycInt::from_coeffs(ints(&[5, 0, 0, 0])).as_integer(), Some(BigInt::from(5)));
    }

    #[test]
    fn modulus_mismatch() {
        assert_eq!(
            CycInt::root(3, 1).add(&CycInt::root(4, 1)).unwrap_err(),
            CyclotomicError::ModulusMismatch(3, 4)
        );
        assert!(CycInt::root(3, 1).mul(&CycInt::root(4, 1)).is_err());
    }

    #[test]
    fn known_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(*cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
        let phi105 = cyclotomic_polynomial(105);
        assert_eq!(phi105.len(), 49);
        assert!(phi105.contains(&BigInt::from(-2)));
    }
}
