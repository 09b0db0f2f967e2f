//! Filtered binomial sums and the W-sequences that generate them.
//!
//! `bracket_direct` enumerates `[n r]_m(a) = sum_{k = r (mod m)} C(n,k) a^k`
//! term by term. `bracket_via_w` instead averages the integer sequences
//! `W_n(r,d)` over the divisors d | m, where each W is evaluated through its
//! Mobius closed form. `WSeqContext` runs W through the order-phi(m) linear
//! recurrence whose characteristic polynomial `A_m(x)` is built from the
//! cyclotomic polynomial, so complex roots of unity never appear anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modp;
use crate::numtheory::{divisors, euler_phi, gcd_u64, is_prime, mobius};
use crate::poly::{cyclotomic_poly, IntPolynomial};

/// Parameters of one filtered binomial sum; requires n, m >= 1 and a != 0, +-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketQuery {
    pub n: u64,
    pub m: u64,
    pub r: i64,
    pub a: i64,
}

impl BracketQuery {
    pub fn new(n: u64, m: u64, r: i64, a: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidQuery("n must be >= 1"));
        }
        if m < 1 {
            return Err(Error::InvalidQuery("m must be >= 1"));
        }
        if a == 0 || a == 1 || a == -1 {
            return Err(Error::InvalidQuery("a must not be 0, 1, or -1"));
        }
        Ok(BracketQuery { n, m, r, a })
    }
}

/// Running-product iterator over C(n,k) a^k for k = 0..=n; each step is an
/// exact big-integer multiply and divide.
fn fold_terms<F: FnMut(u64, &BigInt)>(n: u64, a: i64, mut f: F) {
    let a_big = BigInt::from(a);
    let mut binom = BigInt::one();
    let mut apow = BigInt::one();
    let mut term = BigInt::one();
    f(0, &term);
    for k in 1..=n {
        binom = binom * (n - k + 1) / k;
        apow *= &a_big;
        term = &binom * &apow;
        f(k, &term);
    }
}

/// Direct enumeration of the bracket sum.
pub fn bracket_direct(q: &BracketQuery) -> BigInt {
    let r = q.r.rem_euclid(q.m as i64) as u64;
    let mut total = BigInt::zero();
    fold_terms(q.n, q.a, |k, term| {
        if k % q.m == r {
            total += term;
        }
    });
    total
}

/// Characteristic polynomial A_m(x) of the W recurrence: the monic integer
/// polynomial of degree phi(m) equal to a^phi(m) * Phi_m((x-1)/a).
pub fn a_poly(m: u64, a: i64) -> IntPolynomial {
    assert!(m >= 1, "a_poly: m must be >= 1");
    assert!(
        a != 0 && a != 1 && a != -1,
        "a_poly: a must not be 0, 1, or -1"
    );
    let phi_m = cyclotomic_poly(m);
    let deg = phi_m.degree().expect("cyclotomic polynomial is nonzero");
    let a_big = BigInt::from(a);
    let mut apows = Vec::with_capacity(deg + 1);
    apows.push(BigInt::one());
    for _ in 0..deg {
        apows.push(apows.last().unwrap() * &a_big);
    }
    let x_minus_1 = IntPolynomial::from_i64(&[-1, 1]);
    let mut result = IntPolynomial::zero();
    let mut pow_xm1 = IntPolynomial::one();
    for j in 0..=deg {
        let c = phi_m.coeff(j) * &apows[deg - j];
        result = result.add(&pow_xm1.scale(&c));
        if j < deg {
            pow_xm1 = pow_xm1.mul(&x_minus_1);
        }
    }
    debug_assert_eq!(result.degree(), Some(deg));
    debug_assert!(result.is_monic());
    result
}

/// Mobius weight mu(M)/phi(M) with M = m / gcd(c, m), as an exact rational.
fn class_weight(m: u64, class: u64) -> Ratio<BigInt> {
    let g = if class == 0 { m } else { gcd_u64(class, m) };
    let big_m = m / g;
    Ratio::new(BigInt::from(mobius(big_m)), BigInt::from(euler_phi(big_m)))
}

/// W_n(r,m) by the Mobius closed form
/// `phi(m) * sum_k mu(m/(k-r,m))/phi(m/(k-r,m)) C(n,k) a^k`,
/// accumulated with exact rationals; the result is asserted to be an integer.
pub fn w_closed_form(n: u64, r: i64, m: u64, a: i64) -> BigInt {
    assert!(m >= 1, "w_closed_form: m must be >= 1");
    let mut class_sums = vec![BigInt::zero(); m as usize];
    fold_terms(n, a, |k, term| {
        class_sums[(k % m) as usize] += term;
    });
    let r_mod = r.rem_euclid(m as i64) as u64;
    let mut total = BigRational::zero();
    for c in 0..m {
        let diff = (c + m - r_mod) % m;
        total += class_weight(m, diff) * BigRational::from(class_sums[c as usize].clone());
    }
    total *= BigRational::from(BigInt::from(euler_phi(m)));
    assert!(
        total.is_integer(),
        "W_{n}({r},{m}) closed form must be an integer"
    );
    total.to_integer()
}

/// Seeded context for evaluating W_n(r,m) through the linear recurrence
/// `sum_{s=0}^{phi(m)} b_s W_{n+s} = 0` with b_s from `a_poly`.
///
/// Seeds are the first phi(m) closed-form values for every residue r; the
/// context is immutable after construction and safe to share across threads.
#[derive(Clone, Debug)]
pub struct WSeqContext {
    m: u64,
    a: i64,
    char_poly: IntPolynomial,
    seeds: Vec<Vec<BigInt>>,
}

impl WSeqContext {
    pub fn new(m: u64, a: i64) -> Self {
        let char_poly = a_poly(m, a);
        let order = euler_phi(m) as usize;
        assert_eq!(char_poly.degree(), Some(order));
        assert!(char_poly.is_monic());
        let seeds = (0..m)
            .map(|r| {
                (0..order as u64)
                    .map(|n| w_closed_form(n, r as i64, m, a))
                    .collect()
            })
            .collect();
        WSeqContext {
            m,
            a,
            char_poly,
            seeds,
        }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn char_poly(&self) -> &IntPolynomial {
        &self.char_poly
    }

    pub fn seed(&self, r: i64) -> &[BigInt] {
        &self.seeds[r.rem_euclid(self.m as i64) as usize]
    }

    /// W_n(r,m) by iterating the monic recurrence from the seeds.
    pub fn w(&self, n: u64, r: i64) -> BigInt {
        let seeds = self.seed(r);
        let order = seeds.len();
        if (n as usize) < order {
            return seeds[n as usize].clone();
        }
        let mut window = seeds.to_vec();
        for _ in 0..=(n as usize - order) {
            let mut next = BigInt::zero();
            for (s, w) in window.iter().enumerate() {
                next -= self.char_poly.coeff(s) * w;
            }
            window.rotate_left(1);
            window[order - 1] = next;
        }
        window[order - 1].clone()
    }
}

/// W_n(r,m) via the recurrence; seeds and characteristic polynomial come from `ctx`.
pub fn w_recurrence(ctx: &WSeqContext, n: u64, r: i64) -> BigInt {
    ctx.w(n, r)
}

/// The bracket sum as `(1/m) sum_{d|m} W_n(r,d)`, with exact divisibility asserted.
pub fn bracket_via_w(q: &BracketQuery) -> BigInt {
    let mut total = BigInt::zero();
    for d in divisors(q.m) {
        total += w_closed_form(q.n, q.r, d, q.a);
    }
    let (quot, rem) = total.div_rem(&BigInt::from(q.m));
    assert!(
        rem.is_zero(),
        "sum of W_n(r,d) over d | m must be divisible by m"
    );
    quot
}

/// Left side of the Mobius delta identity: `sum_{d|m} mu(m/d) d [d | c]`.
pub fn mobius_delta_lhs(m: u64, c: i64) -> i64 {
    assert!(m >= 1);
    divisors(m)
        .iter()
        .map(|&d| {
            if c.rem_euclid(d as i64) == 0 {
                mobius(m / d) * d as i64
            } else {
                0
            }
        })
        .sum()
}

/// Right side of the Mobius delta identity: `phi(m) mu(m/(c,m)) / phi(m/(c,m))`.
pub fn mobius_delta_rhs(m: u64, c: i64) -> Ratio<i64> {
    assert!(m >= 1);
    let cr = c.rem_euclid(m as i64) as u64;
    let g = if cr == 0 { m } else { gcd_u64(cr, m) };
    let big_m = m / g;
    Ratio::new(euler_phi(m) as i64 * mobius(big_m), euler_phi(big_m) as i64)
}

/// Denominator shape g(k) of a harmonic-type partial sum.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    K,
    TwoKMinus1,
    ThreeKMinus1,
    ThreeKMinus2,
    SixKMinus1,
    SixKMinus2,
}

impl StepKind {
    fn denominator(self, k: u64) -> u64 {
        match self {
            StepKind::K => k,
            StepKind::TwoKMinus1 => 2 * k - 1,
            StepKind::ThreeKMinus1 => 3 * k - 1,
            StepKind::ThreeKMinus2 => 3 * k - 2,
            StepKind::SixKMinus1 => 6 * k - 1,
            StepKind::SixKMinus2 => 6 * k - 2,
        }
    }
}

/// `(coeff_num/coeff_den) * sum_{k=1}^{upper} base^k / g(k)` reduced mod p,
/// with the base given as a numerator/denominator pair so rational bases like
/// a/(2-a) cost a single inversion. The empty sum (upper = 0) is 0.
pub fn harmonic_sum_mod(
    p: u64,
    upper: u64,
    coeff_num: i64,
    coeff_den: i64,
    step: StepKind,
    base_num: i64,
    base_den: i64,
) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let rational = |num: i64, den: i64| -> Result<u64> {
        let d = modp::inv(modp::reduce_i64(den, p), p).ok_or(Error::BaseNotInvertible {
            value: num,
            denominator: den,
            p,
        })?;
        Ok(modp::mul(modp::reduce_i64(num, p), d, p))
    };
    let coeff = rational(coeff_num, coeff_den)?;
    if upper == 0 {
        return Ok(0);
    }
    let base = rational(base_num, base_den)?;
    let inv_t = modp::inv_table(p - 1, p);
    let mut sum = 0u64;
    let mut power = 1u64;
    for k in 1..=upper {
        power = modp::mul(power, base, p);
        let d = step.denominator(k);
        let dr = d % p;
        if dr == 0 {
            return Err(Error::NonInvertibleDenominator {
                k,
                denominator: d,
                p,
            });
        }
        sum = modp::add(sum, modp::mul(power, inv_t[dr as usize], p), p);
    }
    Ok(modp::mul(coeff, sum, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u64, m: u64, r: i64, a: i64) -> BracketQuery {
        BracketQuery::new(n, m, r, a).unwrap()
    }

    #[test]
    fn query_validation() {
        assert!(BracketQuery::new(4, 2, 0, 2).is_ok());
        for a in [-1, 0, 1] {
            assert_eq!(
                BracketQuery::new(4, 2, 0, a),
                Err(Error::InvalidQuery("a must not be 0, 1, or -1"))
            );
        }
        assert!(BracketQuery::new(0, 2, 0, 2).is_err());
        assert!(BracketQuery::new(4, 0, 0, 2).is_err());
    }

    #[test]
    fn bracket_direct_examples() {
        // 1 + 6*4 + 16
        assert_eq!(bracket_direct(&q(4, 2, 0, 2)), BigInt::from(41));
        // full binomial theorem: (1+3)^5
        assert_eq!(bracket_direct(&q(5, 1, 0, 3)), BigInt::from(1024));
        // only k = 0 survives
        assert_eq!(bracket_direct(&q(1, 4, 0, 2)), BigInt::from(1));
    }

    #[test]
    fn a_poly_printed_forms() {
        // A_1 = x - 1 - a
        assert_eq!(a_poly(1, 5), IntPolynomial::from_i64(&[-6, 1]));
        // A_3 at a = 2: x^2 - (2-a)x + a^2-a+1 = x^2 + 3
        assert_eq!(a_poly(3, 2), IntPolynomial::from_i64(&[3, 0, 1]));
        // A_6 at a = -2: x^2 - (a+2)x + a^2+a+1 = x^2 + 3
        assert_eq!(a_poly(6, -2), IntPolynomial::from_i64(&[3, 0, 1]));
    }

    #[test]
    fn w_closed_form_small_m() {
        // m = 1: (1+a)^n
        for n in 0..10u64 {
            assert_eq!(w_closed_form(n, 3, 1, 4), BigInt::from(5).pow(n as u32));
        }
        // m = 2: (-1)^r (1-a)^n
        for n in 0..10u64 {
            for r in -3i64..=3 {
                let sign = if r.rem_euclid(2) == 0 { 1 } else { -1 };
                assert_eq!(
                    w_closed_form(n, r, 2, 3),
                    BigInt::from(sign) * BigInt::from(-2).pow(n as u32)
                );
            }
        }
        assert_eq!(w_closed_form(1, 0, 4, 2), BigInt::from(2));
    }

    #[test]
    fn w_recurrence_examples() {
        let ctx = WSeqContext::new(6, 2);
        assert_eq!(w_recurrence(&ctx, 7, 3), w_closed_form(7, 3, 6, 2));
        // below the order, the seed comes back unchanged
        assert_eq!(w_recurrence(&ctx, 1, 3), w_closed_form(1, 3, 6, 2));
        let ctx2 = WSeqContext::new(2, 3);
        assert_eq!(w_recurrence(&ctx2, 10, 1), BigInt::from(-1024));
    }

    #[test]
    fn bracket_via_w_matches_direct() {
        assert_eq!(bracket_via_w(&q(4, 2, 0, 2)), BigInt::from(41));
        for n in 1..=8u64 {
            assert_eq!(bracket_via_w(&q(n, 1, 0, 5)), BigInt::from(6).pow(n as u32));
        }
        let query = q(6, 4, 2, -2);
        assert_eq!(bracket_via_w(&query), bracket_direct(&query));
    }

    #[test]
    fn mobius_delta_examples() {
        assert_eq!(mobius_delta_lhs(4, 2), -2);
        assert_eq!(mobius_delta_rhs(4, 2), Ratio::from_integer(-2));
        for c in -5i64..=5 {
            assert_eq!(mobius_delta_lhs(1, c), 1);
            assert_eq!(mobius_delta_rhs(1, c), Ratio::from_integer(1));
        }
        assert_eq!(mobius_delta_lhs(9, 0), 6);
        assert_eq!(mobius_delta_rhs(9, 0), Ratio::from_integer(6));
    }

    #[test]
    fn harmonic_examples() {
        // 3 + 9/2 = 3 + 27 = 0 (mod 5)
        assert_eq!(harmonic_sum_mod(5, 2, 1, 1, StepKind::K, 3, 1).unwrap(), 0);
        assert_eq!(harmonic_sum_mod(7, 0, 1, 1, StepKind::K, 3, 1).unwrap(), 0);
        // sum (-1)^(k-1)/k = 1 - 1/2 = 1 - 2 = 2 (mod 3)
        assert_eq!(
            harmonic_sum_mod(3, 2, -1, 1, StepKind::K, -1, 1).unwrap(),
            2
        );
    }

    #[test]
    fn harmonic_errors() {
        assert_eq!(
            harmonic_sum_mod(9, 2, 1, 1, StepKind::K, 3, 1),
            Err(Error::NotOddPrime(9))
        );
        assert_eq!(
            harmonic_sum_mod(5, 7, 1, 1, StepKind::K, 3, 1),
            Err(Error::NonInvertibleDenominator {
                k: 5,
                denominator: 5,
                p: 5
            })
        );
        assert_eq!(
            harmonic_sum_mod(5, 2, 1, 1, StepKind::K, 3, 10),
            Err(Error::BaseNotInvertible {
                value: 3,
                denominator: 10,
                p: 5
            })
        );
    }

    #[test]
    fn row_sum_over_residues() {
        // sum over r of the bracket equals (1+a)^n
        for m in 1..=6u64 {
            for n in 1..=10u64 {
                for a in [-3i64, 2, 5] {
                    let total: BigInt = (0..m as i64).map(|r| bracket_direct(&q(n, m, r, a))).sum();
                    assert_eq!(total, BigInt::from(1 + a).pow(n as u32));
                }
            }
        }
    }

    #[test]
    fn periodicity_in_r() {
        for r in [-9i64, -2, 5, 13] {
            let base = r.rem_euclid(6);
            assert_eq!(w_closed_form(9, r, 6, -4), w_closed_form(9, base, 6, -4));
            assert_eq!(
                bracket_direct(&q(9, 6, r, -4)),
                bracket_direct(&q(9, 6, base, -4))
            );
        }
    }
}
