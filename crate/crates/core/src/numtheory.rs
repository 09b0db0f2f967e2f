//! Classical number-theoretic functions over exact integers.
//!
//! Scalar functions of a modulus index (`euler_phi`, `mobius`, `divisors`,
//! sieves) work on `u64`; value-level operations (`binomial`, `legendre`,
//! `fermat_quotient`, modular arithmetic) take arbitrary-precision inputs.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::modp;

/// Greatest common divisor with gcd(0, 0) = 0; sign-insensitive.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigUint {
    a.gcd(b).magnitude().clone()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of `m` in ascending order.
pub fn divisors(m: u64) -> Vec<u64> {
    assert!(m >= 1, "divisors: m must be >= 1");
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= m {
        if m % i == 0 {
            out.push(i);
            if i != m / i {
                out.push(m / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// Euler totient: the count of 1 <= l <= m with gcd(l, m) = 1.
pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1, "euler_phi: m must be >= 1");
    let mut phi = m;
    for (p, _) in factorize(m) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Mobius function: 0 on non-squarefree m, else (-1)^(number of prime factors).
pub fn mobius(m: u64) -> i64 {
    assert!(m >= 1, "mobius: m must be >= 1");
    let factors = factorize(m);
    if factors.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Binomial coefficient with the convention C(n, k) = 0 for k < 0 or k > n.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k as u64))
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// Legendre symbol (b/p) via Euler's criterion; 0 iff p | b.
pub fn legendre(b: &BigInt, p: u64) -> Result<i32> {
    require_odd_prime(p)?;
    let r = b.mod_floor(&BigInt::from(p));
    let r = u64::try_from(&r).expect("residue fits u64");
    let e = modp::pow(r, (p - 1) / 2, p);
    Ok(match e {
        0 => 0,
        1 => 1,
        _ => {
            debug_assert_eq!(e, p - 1);
            -1
        }
    })
}

/// Fermat quotient q_p(b) = (b^(p-1) - 1)/p reduced mod p; requires p coprime to b.
///
/// Negative bases are reduced mod p^2 first, preserving the congruence class.
pub fn fermat_quotient(b: &BigInt, p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    assert!(p < 1 << 31, "fermat_quotient: p^2 must fit in u64");
    let p2 = p * p;
    let r = b.mod_floor(&BigInt::from(p2));
    let r = u64::try_from(&r).expect("residue fits u64");
    if r % p == 0 {
        return Err(Error::FermatQuotientUndefined { p });
    }
    let x = modp::pow(r, p - 1, p2);
    debug_assert_eq!(x % p, 1 % p);
    Ok((x - 1) / p % p)
}

/// b^e mod m over arbitrary-precision integers; the base may be negative.
pub fn mod_pow(base: &BigInt, exp: &BigUint, modulus: &BigUint) -> BigUint {
    assert!(!modulus.is_zero(), "mod_pow: zero modulus");
    let m = BigInt::from(modulus.clone());
    let b = base.mod_floor(&m);
    b.modpow(&BigInt::from(exp.clone()), &m).magnitude().clone()
}

/// Inverse of x mod m, if gcd(x, m) = 1.
pub fn mod_inverse(x: &BigInt, modulus: &BigUint) -> Result<BigUint> {
    assert!(!modulus.is_zero(), "mod_inverse: zero modulus");
    let m = BigInt::from(modulus.clone());
    match x.modinv(&m) {
        Some(inv) => Ok(inv.mod_floor(&m).magnitude().clone()),
        None => Err(Error::NotInvertible {
            value: x.clone(),
            modulus: modulus.clone(),
        }),
    }
}

/// Ordered primes <= bound, by sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Primes in the inclusive range [lo, hi].
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    primes_up_to(hi).into_iter().filter(|&p| p >= lo).collect()
}

/// Deterministic primality by trial division; intended for desk-scale n.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}
