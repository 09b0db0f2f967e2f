//! Randomized property tests over the exact-arithmetic kernels.

use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;

use lucasq_core::lucas::{lucas_pair, lucas_pair_naive, LucasParams};
use lucasq_core::numtheory::{euler_phi, gcd_u64, mobius};
use lucasq_core::poly::IntPolynomial;
use lucasq_core::sums::{
    bracket_direct, bracket_via_w, harmonic_sum_mod, mobius_delta_lhs, mobius_delta_rhs,
    w_closed_form, BracketQuery, StepKind, WSeqContext,
};

fn small_a() -> impl Strategy<Value = i64> {
    (-6i64..=6).prop_filter("a must avoid 0, +-1", |a| ![-1, 0, 1].contains(a))
}

fn poly(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1).prop_map(|v| IntPolynomial::from_i64(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_and_mobius_multiplicative((s, t) in (1u64..=200, 1u64..=200)) {
        prop_assume!(gcd_u64(s, t) == 1);
        prop_assert_eq!(euler_phi(s * t), euler_phi(s) * euler_phi(t));
        prop_assert_eq!(mobius(s * t), mobius(s) * mobius(t));
    }

    #[test]
    fn mobius_delta_sides_agree(m in 1u64..=300, c in -1000i64..=1000) {
        prop_assert_eq!(
            Ratio::from_integer(mobius_delta_lhs(m, c)),
            mobius_delta_rhs(m, c)
        );
    }

    #[test]
    fn poly_mul_then_div_exact_round_trips(f in poly(6), g in poly(4)) {
        prop_assume!(!g.is_zero());
        let product = f.mul(&g);
        prop_assert_eq!(product.div_exact(&g).unwrap(), f);
    }

    #[test]
    fn poly_eval_is_a_ring_hom(f in poly(5), g in poly(5), x in -20i64..=20) {
        let x = BigInt::from(x);
        prop_assert_eq!(f.mul(&g).eval(&x), f.eval(&x) * g.eval(&x));
        prop_assert_eq!(f.add(&g).eval(&x), f.eval(&x) + g.eval(&x));
    }

    #[test]
    fn bracket_routes_agree(n in 1u64..=25, m in 1u64..=12, r in -30i64..=30, a in small_a()) {
        let q = BracketQuery::new(n, m, r, a).unwrap();
        prop_assert_eq!(bracket_direct(&q), bracket_via_w(&q));
    }

    #[test]
    fn w_routes_agree(n in 0u64..=30, m in 1u64..=12, r in -12i64..=12, a in small_a()) {
        let ctx = WSeqContext::new(m, a);
        prop_assert_eq!(w_closed_form(n, r, m, a), ctx.w(n, r));
    }

    #[test]
    fn bracket_row_sums_to_binomial_theorem(n in 1u64..=30, m in 1u64..=10, a in small_a()) {
        let total: BigInt = (0..m as i64)
            .map(|r| bracket_direct(&BracketQuery::new(n, m, r, a).unwrap()))
            .sum();
        prop_assert_eq!(total, BigInt::from(1 + a).pow(n as u32));
    }

    #[test]
    fn lucas_doubling_matches_naive(a in -6i64..=6, b in -6i64..=6, n in 0u64..=300) {
        let params = LucasParams::new(a, b);
        prop_assert_eq!(lucas_pair(&params, n), lucas_pair_naive(&params, n));
    }

    #[test]
    fn harmonic_coefficient_scales(
        upper in 0u64..=40,
        cn in -9i64..=9,
        bn in -9i64..=9,
    ) {
        let p = 101u64;
        let plain = harmonic_sum_mod(p, upper, 1, 1, StepKind::TwoKMinus1, bn, 7).unwrap();
        let scaled = harmonic_sum_mod(p, upper, cn, 5, StepKind::TwoKMinus1, bn, 7).unwrap();
        let coeff = (cn.rem_euclid(101) as u64) * lucasq_core::modp::inv(5, 101).unwrap() % 101;
        prop_assert_eq!(scaled, coeff * plain % 101);
    }

    #[test]
    fn legendre_is_multiplicative(b1 in -50i64..=50, b2 in -50i64..=50) {
        for p in [3u64, 7, 11, 13, 97] {
            let lhs = lucasq_core::numtheory::legendre(&BigInt::from(b1 * b2), p).unwrap();
            let rhs = lucasq_core::numtheory::legendre(&BigInt::from(b1), p).unwrap()
                * lucasq_core::numtheory::legendre(&BigInt::from(b2), p).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
