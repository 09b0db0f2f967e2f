//! Fixed-width modular arithmetic kernels.
//!
//! Every modulus here fits in a `u64` with products taken through `u128`,
//! which covers mod-p and mod-p^2 work for desk-scale primes (p < 2^31).

/// Euclidean reduction of a signed value into [0, m).
pub fn reduce_i64(x: i64, m: u64) -> u64 {
    assert!(m >= 1 && m <= i64::MAX as u64);
    x.rem_euclid(m as i64) as u64
}

pub fn add(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

pub fn sub(a: u64, b: u64, m: u64) -> u64 {
    add(a, m - b % m, m)
}

pub fn mul(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub fn pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    base %= m;
    let mut acc = 1 % m;
    while exp != 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, m);
        }
        base = mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of a mod m by extended Euclid, if gcd(a, m) = 1.
pub fn inv(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 == 1 {
        Some(s0.rem_euclid(m as i128) as u64)
    } else {
        None
    }
}

/// Inverses of 1..=n mod m. Requires every i in 2..=n to not divide m
/// (holds for n < p with m = p or m = p^2).
pub fn inv_table(n: u64, m: u64) -> Vec<u64> {
    let n = n as usize;
    let mut t = vec![0u64; n + 1];
    if n >= 1 {
        t[1] = 1 % m;
    }
    for i in 2..=n {
        let r = m % i as u64;
        assert!(r != 0, "inv_table: {i} divides modulus {m}");
        // inv(i) = -(m / i) * inv(m mod i)
        t[i] = m - mul(m / i as u64, t[r as usize], m);
        if t[i] == m {
            t[i] = 0;
        }
    }
    t
}

/// Legendre symbol for machine-size b; p must be an odd prime.
pub fn legendre_i64(b: i64, p: u64) -> i32 {
    debug_assert!(p >= 3 && p % 2 == 1);
    match pow(reduce_i64(b, p), (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        e => {
            debug_assert_eq!(e, p - 1);
            -1
        }
    }
}

/// Fermat quotient for machine-size b; None when p | b. p must be an odd prime.
pub fn fermat_quotient_i64(b: i64, p: u64) -> Option<u64> {
    debug_assert!(p >= 3 && p % 2 == 1 && p < 1 << 31);
    let p2 = p * p;
    let r = reduce_i64(b, p2);
    if r % p == 0 {
        return None;
    }
    let x = pow(r, p - 1, p2);
    Some((x - 1) / p % p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        assert_eq!(reduce_i64(-3, 7), 4);
        assert_eq!(sub(2, 5, 7), 4);
        assert_eq!(pow(2, 10, 1000), 24);
        assert_eq!(pow(5, 0, 7), 1);
        assert_eq!(pow(3, 4, 1), 0);
    }

    #[test]
    fn inverse_agrees_with_pow() {
        for p in [3u64, 5, 7, 97, 1009] {
            for a in 1..p.min(60) {
                let i = inv(a, p).unwrap();
                assert_eq!(mul(a, i, p), 1);
                assert_eq!(i, pow(a, p - 2, p));
            }
        }
        assert_eq!(inv(6, 9), None);
        assert_eq!(inv(5, 1), Some(0));
    }

    #[test]
    fn inv_table_matches_inv() {
        for m in [101u64, 101 * 101, 13 * 13] {
            let p = (m as f64).sqrt() as u64;
            let bound = if m == 101 { 100 } else { p - 1 };
            let t = inv_table(bound, m);
            for i in 1..=bound {
                assert_eq!(t[i as usize], inv(i, m).unwrap(), "i={i} m={m}");
            }
        }
    }

    #[test]
    fn small_symbols() {
        assert_eq!(legendre_i64(2, 7), 1);
        assert_eq!(legendre_i64(2, 5), -1);
        assert_eq!(legendre_i64(-3, 7), 1);
        assert_eq!(legendre_i64(21, 7), 0);
        assert_eq!(fermat_quotient_i64(2, 5), Some(3));
        assert_eq!(fermat_quotient_i64(10, 5), None);
    }
}
