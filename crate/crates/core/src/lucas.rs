//! Second-order Lucas sequences u_n(A,B), v_n(A,B).
//!
//! The recurrence is `u_{n+1} = B u_n - A u_{n-1}` with u_0 = 0, u_1 = 1,
//! v_0 = 2, v_1 = B, and discriminant D = B^2 - 4A. Fast doubling works on
//! the pair (u_k, u_{k+1}):
//!
//!   u_{2k}   = u_k (2 u_{k+1} - B u_k)
//!   u_{2k+1} = u_{k+1}^2 - A u_k^2
//!
//! and recovers v_n = 2 u_{n+1} - B u_n at the end. The same ladder runs
//! over exact integers and over any fixed modulus (no division involved).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modp;

/// Recurrence parameters (A, B) with the derived discriminant D = B^2 - 4A.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LucasParams {
    a: i64,
    b: i64,
    d: i64,
}

impl LucasParams {
    pub fn new(a: i64, b: i64) -> Self {
        let d = (b as i128 * b as i128 - 4 * a as i128)
            .try_into()
            .expect("discriminant overflows i64");
        LucasParams { a, b, d }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }
}

/// Exact value pair (u_n, v_n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LucasPair {
    pub n: u64,
    pub u: BigInt,
    pub v: BigInt,
}

impl LucasPair {
    /// The norm identity v_n^2 - D u_n^2 = 4 A^n, checked exactly.
    pub fn satisfies_norm_identity(&self, params: &LucasParams) -> bool {
        let lhs = &self.v * &self.v - BigInt::from(params.d) * &self.u * &self.u;
        let rhs = BigInt::from(4) * BigInt::from(params.a).pow(self.n as u32);
        lhs == rhs
    }
}

/// Residue pair (u_n, v_n) mod `modulus`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LucasPairMod {
    pub n: u64,
    pub u: u64,
    pub v: u64,
    pub modulus: u64,
}

/// Exact (u_n, v_n) by fast doubling.
pub fn lucas_pair(params: &LucasParams, n: u64) -> LucasPair {
    let a = BigInt::from(params.a);
    let b = BigInt::from(params.b);
    // (u, w) = (u_k, u_{k+1}), starting at k = 0
    let mut u = BigInt::zero();
    let mut w = BigInt::one();
    let bits = 64 - n.leading_zeros();
    for i in (0..bits).rev() {
        let even = &u * (BigInt::from(2) * &w - &b * &u);
        let odd = &w * &w - &a * (&u * &u);
        if (n >> i) & 1 == 0 {
            u = even;
            w = odd;
        } else {
            w = &b * &odd - &a * &even;
            u = odd;
        }
    }
    let v = BigInt::from(2) * &w - &b * &u;
    LucasPair { n, u, v }
}

/// Exact (u_n, v_n) by the naive linear iteration; the doubling oracle.
pub fn lucas_pair_naive(params: &LucasParams, n: u64) -> LucasPair {
    let a = BigInt::from(params.a);
    let b = BigInt::from(params.b);
    let mut u_prev = BigInt::zero();
    let mut u = BigInt::one();
    let mut v_prev = BigInt::from(2);
    let mut v = b.clone();
    if n == 0 {
        return LucasPair {
            n,
            u: u_prev,
            v: v_prev,
        };
    }
    for _ in 1..n {
        let u_next = &b * &u - &a * &u_prev;
        u_prev = std::mem::replace(&mut u, u_next);
        let v_next = &b * &v - &a * &v_prev;
        v_prev = std::mem::replace(&mut v, v_next);
    }
    LucasPair { n, u, v }
}

/// (u_n, v_n) mod `modulus` (>= 2) by the same doubling ladder.
pub fn lucas_pair_mod(params: &LucasParams, n: u64, modulus: u64) -> LucasPairMod {
    assert!(modulus >= 2, "lucas_pair_mod: modulus must be >= 2");
    let m = modulus;
    let a = modp::reduce_i64(params.a, m);
    let b = modp::reduce_i64(params.b, m);
    let mut u = 0u64;
    let mut w = 1 % m;
    let bits = 64 - n.leading_zeros();
    for i in (0..bits).rev() {
        let even = modp::mul(u, modp::sub(modp::add(w, w, m), modp::mul(b, u, m), m), m);
        let odd = modp::sub(modp::mul(w, w, m), modp::mul(a, modp::mul(u, u, m), m), m);
        if (n >> i) & 1 == 0 {
            u = even;
            w = odd;
        } else {
            u = odd;
            w = modp::sub(modp::mul(b, odd, m), modp::mul(a, even, m), m);
        }
    }
    let v = modp::sub(modp::add(w, w, m), modp::mul(b, u, m), m);
    LucasPairMod {
        n,
        u,
        v,
        modulus: m,
    }
}

/// Lucas quotient (u_index / p) mod p, via mod-p^2 evaluation; requires p | u_index.
pub fn lucas_quotient(params: &LucasParams, p: u64, index: u64) -> Result<u64> {
    assert!(
        p >= 3 && p % 2 == 1 && p < 1 << 31,
        "p must be a small odd prime"
    );
    let pair = lucas_pair_mod(params, index, p * p);
    general_quotient(pair.u, p).map_err(|_| Error::QuotientUndefined { p, index })
}

/// (value / p) mod p for a residue known mod p^2; errors when p does not divide it.
pub fn general_quotient(value_mod_p2: u64, p: u64) -> Result<u64> {
    if value_mod_p2 % p != 0 {
        return Err(Error::NotDivisible {
            value: value_mod_p2,
            p,
        });
    }
    Ok(value_mod_p2 / p % p)
}

/// Half-discriminant transform: (A', B) with 4A' = B^2 - 4A (mod p), A' in [0, p).
pub fn transform_half_disc(params: &LucasParams, p: u64) -> LucasParams {
    assert!(p >= 3 && p % 2 == 1, "transform_half_disc: p must be odd");
    let inv4 = modp::inv(4, p).expect("4 is invertible mod an odd prime");
    let a_new = modp::mul(modp::reduce_i64(params.d, p), inv4, p);
    LucasParams::new(a_new as i64, params.b)
}

/// Unit-B transform: (A', 1) with A' = A / B^2 (mod p), A' in [0, p);
/// B = +-1 is a fixed point and is passed through unreduced.
pub fn transform_unit_b(params: &LucasParams, p: u64) -> Result<LucasParams> {
    assert!(p >= 3 && p % 2 == 1, "transform_unit_b: p must be odd");
    if params.b.rem_euclid(p as i64) == 0 {
        return Err(Error::TransformUndefined { p });
    }
    if params.b * params.b == 1 {
        return Ok(LucasParams::new(params.a, 1));
    }
    let br = modp::reduce_i64(params.b, p);
    let b2 = modp::mul(br, br, p);
    let a_new = modp::mul(
        modp::reduce_i64(params.a, p),
        modp::inv(b2, p).expect("B^2 is invertible when p does not divide B"),
        p,
    );
    Ok(LucasParams::new(a_new as i64, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_store_discriminant() {
        let p = LucasParams::new(5, 2);
        assert_eq!(p.discriminant(), -16);
        assert_eq!(LucasParams::new(-1, 1).discriminant(), 5);
    }

    #[test]
    fn doubling_examples() {
        // iterate by hand: u = 0,1,2,-1,-12,-19
        assert_eq!(lucas_pair(&LucasParams::new(5, 2), 5).u, BigInt::from(-19));
        // Fibonacci
        assert_eq!(lucas_pair(&LucasParams::new(-1, 1), 10).u, BigInt::from(55));
        let zero = lucas_pair(&LucasParams::new(3, -4), 0);
        assert_eq!((zero.u, zero.v), (BigInt::from(0), BigInt::from(2)));
    }

    #[test]
    fn doubling_matches_naive() {
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let params = LucasParams::new(a, b);
                for n in 0..=80u64 {
                    let fast = lucas_pair(&params, n);
                    let slow = lucas_pair_naive(&params, n);
                    assert_eq!(fast, slow, "A={a} B={b} n={n}");
                }
            }
        }
    }

    #[test]
    fn norm_identity_holds() {
        for a in [-5i64, -1, 2, 5] {
            for b in [-4i64, 1, 3] {
                let params = LucasParams::new(a, b);
                for n in 0..=40u64 {
                    assert!(lucas_pair(&params, n).satisfies_norm_identity(&params));
                }
            }
        }
    }

    #[test]
    fn doubling_identities() {
        // v_{2n} = v_n^2 - 2A^n = D u_n^2 + 2A^n
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let params = LucasParams::new(a, b);
                for n in 0..=50u64 {
                    let half = lucas_pair(&params, n);
                    let full = lucas_pair(&params, 2 * n);
                    let apow = BigInt::from(a).pow(n as u32);
                    assert_eq!(full.v, &half.v * &half.v - 2 * &apow);
                    assert_eq!(
                        full.v,
                        BigInt::from(params.discriminant()) * &half.u * &half.u + 2 * &apow
                    );
                }
            }
        }
    }

    #[test]
    fn modular_values() {
        // U_10(5,2) = -1558 = -2*19*41
        let p = lucas_pair_mod(&LucasParams::new(5, 2), 10, 41);
        assert_eq!(p.u, 0);
        let q = lucas_pair_mod(&LucasParams::new(7, -3), 1, 10);
        assert_eq!((q.u, q.v), (1, 7));
        // Fibonacci F_12 = 144, L_12 = 322
        let f = lucas_pair_mod(&LucasParams::new(-1, 1), 12, 7);
        assert_eq!((f.u, f.v), (144 % 7, 322 % 7));
    }

    #[test]
    fn modular_agrees_with_exact() {
        for a in [-4i64, 2, 5] {
            for b in [-3i64, 1, 4] {
                let params = LucasParams::new(a, b);
                for modulus in [2u64, 9, 25, 41, 169] {
                    for n in 0..=60u64 {
                        let exact = lucas_pair(&params, n);
                        let modular = lucas_pair_mod(&params, n, modulus);
                        let m = BigInt::from(modulus);
                        assert_eq!(
                            BigInt::from(modular.u),
                            num_integer::Integer::mod_floor(&exact.u, &m)
                        );
                        assert_eq!(
                            BigInt::from(modular.v),
                            num_integer::Integer::mod_floor(&exact.v, &m)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        // U_10 = -1558, -1558/41 = -38, -38 = 3 (mod 41)
        assert_eq!(lucas_quotient(&LucasParams::new(5, 2), 41, 10).unwrap(), 3);
        // p = 13 = 1 (mod 3) divides u_12 of (A,B) = (7,4); compare the exact route
        let params = LucasParams::new(7, 4);
        let exact = lucas_pair(&params, 12).u;
        assert!((&exact % BigInt::from(13)).is_zero());
        let expect = num_integer::Integer::mod_floor(&(exact / 13), &BigInt::from(13));
        assert_eq!(
            BigInt::from(lucas_quotient(&params, 13, 12).unwrap()),
            expect
        );
        // 13 does not divide u_11
        assert_eq!(
            lucas_quotient(&params, 13, 11),
            Err(Error::QuotientUndefined { p: 13, index: 11 })
        );
    }

    #[test]
    fn general_quotient_examples() {
        assert_eq!(general_quotient(0, 7).unwrap(), 0);
        assert_eq!(general_quotient(7, 7).unwrap(), 1);
        // 3p^2 - 2p mod p^2 = p^2 - 2p, and (p^2 - 2p)/p = p - 2
        let p = 11u64;
        assert_eq!(
            general_quotient((3 * p * p - 2 * p) % (p * p), p).unwrap(),
            p - 2
        );
        assert_eq!(
            general_quotient(8, 7),
            Err(Error::NotDivisible { value: 8, p: 7 })
        );
    }

    #[test]
    fn transforms() {
        let t = transform_half_disc(&LucasParams::new(5, 2), 7);
        assert_eq!((t.a(), t.b()), (3, 2));
        let t = transform_half_disc(&LucasParams::new(1, 4), 5);
        assert_eq!((t.a(), t.b()), (3, 4));
        let t = transform_half_disc(&LucasParams::new(-1, 2), 7);
        assert_eq!((t.a(), t.b()), (2, 2));

        let t = transform_unit_b(&LucasParams::new(5, 2), 7).unwrap();
        assert_eq!((t.a(), t.b()), (3, 1));
        for p in [3u64, 7, 11] {
            let t = transform_unit_b(&LucasParams::new(-1, 1), p).unwrap();
            assert_eq!((t.a(), t.b()), (-1, 1));
        }
        assert_eq!(
            transform_unit_b(&LucasParams::new(3, 3), 3),
            Err(Error::TransformUndefined { p: 3 })
        );
    }

    #[test]
    fn unit_recurrence_patterns() {
        // u(2,2) and v(2,2) follow period-4 powers of -4
        let params = LucasParams::new(2, 2);
        for n in 0..=12u64 {
            let base = BigInt::from(-4).pow(n as u32);
            let p0 = lucas_pair(&params, 4 * n);
            assert_eq!((p0.u, p0.v), (BigInt::zero(), 2 * &base));
            let p1 = lucas_pair(&params, 4 * n + 1);
            assert_eq!((p1.u, p1.v), (base.clone(), 2 * &base));
            let p2 = lucas_pair(&params, 4 * n + 2);
            assert_eq!((p2.u, p2.v), (2 * &base, BigInt::zero()));
            let p3 = lucas_pair(&params, 4 * n + 3);
            assert_eq!((p3.u, p3.v), (2 * &base, BigInt::from(-4) * &base));
        }
        // u(3,4) = (3^n - 1)/2 and v(3,4) = 3^n + 1
        let st = LucasParams::new(3, 4);
        for n in 0..=20u64 {
            let pair = lucas_pair(&st, n);
            let pw = BigInt::from(3).pow(n as u32);
            assert_eq!(pair.u, (&pw - 1) / 2);
            assert_eq!(pair.v, &pw + 1);
        }
    }
}
