//! Dense univariate polynomials over arbitrary-precision integers.
//!
//! Coefficients are stored in ascending degree order. The representation is
//! canonical: the vector is empty for the zero polynomial, and the last
//! element is nonzero otherwise.

use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numtheory::divisors;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Construct from ascending-degree coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The polynomial x^n - 1.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntPolynomial { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Multiply by the scalar c.
    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division: returns q with self = q * divisor, or an error if the
    /// division leaves a remainder or a coefficient quotient is inexact.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (dn, dd) = (self.degree().unwrap(), divisor.degree().unwrap());
        if dn < dd {
            return Err(Error::InexactDivision);
        }
        let lead = divisor.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for i in (0..=dn - dd).rev() {
            let c = &rem[i + dd];
            if c.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(c, lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = &q * b;
                rem[i + j] -= t;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::from_coeffs(quot))
    }

    /// Evaluate at x by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::add(self, rhs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::sub(self, rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::mul(self, rhs)
    }
}

static CYCLOTOMIC_CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();

/// The m-th cyclotomic polynomial, by exact division of x^m - 1 by Phi_d
/// for every proper divisor d. Results are cached for the process lifetime.
pub fn cyclotomic_poly(m: u64) -> Arc<IntPolynomial> {
    assert!(m >= 1, "cyclotomic_poly: m must be >= 1");
    let cache = CYCLOTOMIC_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return Arc::clone(hit);
    }
    let mut poly = IntPolynomial::x_pow_minus_one(m as usize);
    for d in divisors(m) {
        if d == m {
            continue;
        }
        poly = poly
            .div_exact(&cyclotomic_poly(d))
            .expect("x^m - 1 is divisible by every Phi_d with d | m");
    }
    let arc = Arc::new(poly);
    cache
        .lock()
        .unwrap()
        .entry(m)
        .or_insert_with(|| Arc::clone(&arc))
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_mul() {
        let p = IntPolynomial::from_i64(&[3, 0, 1]); // x^2 + 3
        assert_eq!(p.eval(&BigInt::from(2)), BigInt::from(7));
        let a = IntPolynomial::from_i64(&[1, 1]);
        let b = IntPolynomial::from_i64(&[-1, 1]);
        assert_eq!(a.mul(&b), IntPolynomial::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn exact_division() {
        let num = IntPolynomial::from_i64(&[-1, 0, 1]);
        let den = IntPolynomial::from_i64(&[-1, 1]);
        assert_eq!(
            num.div_exact(&den).unwrap(),
            IntPolynomial::from_i64(&[1, 1])
        );
        // x^2 + 1 is not divisible by x - 1
        let bad = IntPolynomial::from_i64(&[1, 0, 1]);
        assert_eq!(bad.div_exact(&den), Err(Error::InexactDivision));
        // 2x + 2 over 2 is fine, x + 1 over 2x is not
        let two_x = IntPolynomial::from_i64(&[0, 2]);
        assert_eq!(
            IntPolynomial::from_i64(&[0, 0, 2])
                .div_exact(&two_x)
                .unwrap(),
            IntPolynomial::from_i64(&[0, 1])
        );
        assert_eq!(
            IntPolynomial::from_i64(&[1, 1]).div_exact(&two_x),
            Err(Error::InexactDivision)
        );
    }

    #[test]
    fn zero_polynomial_is_canonical() {
        let z = IntPolynomial::from_i64(&[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z, IntPolynomial::zero());
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(*cyclotomic_poly(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(2), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(*cyclotomic_poly(6), IntPolynomial::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn cyclotomic_12_by_exact_division_oracle() {
        // independent route: divide x^12 - 1 by Phi_d computed here inline
        let mut expect = IntPolynomial::x_pow_minus_one(12);
        for d in [1u64, 2, 3, 4, 6] {
            let mut phi_d = IntPolynomial::x_pow_minus_one(d as usize);
            for e in divisors(d) {
                if e != d {
                    let inner = {
                        let mut q = IntPolynomial::x_pow_minus_one(e as usize);
                        for f in divisors(e) {
                            if f != e {
                                q = q.div_exact(&cyclotomic_poly(f)).unwrap();
                            }
                        }
                        q
                    };
                    phi_d = phi_d.div_exact(&inner).unwrap();
                }
            }
            expect = expect.div_exact(&phi_d).unwrap();
        }
        assert_eq!(expect, IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(*cyclotomic_poly(12), expect);
    }

    #[test]
    fn cyclotomic_product_over_divisors() {
        for m in 1..=60u64 {
            let mut product = IntPolynomial::one();
            for d in divisors(m) {
                product = product.mul(&cyclotomic_poly(d));
            }
            assert_eq!(product, IntPolynomial::x_pow_minus_one(m as usize), "m={m}");
        }
    }

    #[test]
    fn cyclotomic_cache_concurrent_reads() {
        std::thread::scope(|s| {
            for _ in 0..8 {
                s.spawn(|| {
                    for m in 1..=40u64 {
                        let phi = cyclotomic_poly(m);
                        assert_eq!(phi.degree().unwrap() as u64, crate::numtheory::euler_phi(m));
                    }
                });
            }
        });
    }
}
