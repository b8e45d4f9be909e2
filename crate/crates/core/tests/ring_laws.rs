mod common;

use common::*;
use mdir::ring::{add, convolve, invert, scale, sub};
use mdir::ufd::encoding::{encode_r, series_mul, PrimePositionBasis};
use mdir::ufd::{norm, subring_membership, Subring};
use mdir::{builtin, ArithFunction, IndexBox, MultiIndex, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| Scalar::new(BigInt::from(p), BigInt::from(q)))
}

fn function_on(domain: IndexBox, unit: bool) -> impl Strategy<Value = ArithFunction> {
    let len = domain.len();
    proptest::collection::vec(prop_oneof![3 => Just(Scalar::zero()), 2 => rational()], len).prop_map(move |vals| {
        let mut entries: Vec<(MultiIndex, Scalar)> = domain.indices().into_iter().zip(vals).collect();
        if unit && entries[0].1.is_zero() {
            entries[0].1 = int(1);
        }
        ArithFunction::from_entries(domain, entries.into_iter().filter(|(_, v)| !v.is_zero())).unwrap()
    })
}

fn square() -> IndexBox {
    IndexBox::cube(2, 8).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn commutative(f in function_on(square(), false), g in function_on(square(), false)) {
        prop_assert_eq!(convolve(&f, &g, &square()).unwrap(), convolve(&g, &f, &square()).unwrap());
    }

    #[test]
    fn associative(
        f in function_on(square(), false),
        g in function_on(square(), false),
        h in function_on(square(), false),
    ) {
        let b = square();
        let left = convolve(&convolve(&f, &g, &b).unwrap(), &h, &b).unwrap();
        let right = convolve(&f, &convolve(&g, &h, &b).unwrap(), &b).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn distributive(
        f in function_on(square(), false),
        g in function_on(square(), false),
        h in function_on(square(), false),
    ) {
        let b = square();
        let left = convolve(&f, &add(&g, &h).unwrap(), &b).unwrap();
        let right = add(&convolve(&f, &g, &b).unwrap(), &convolve(&f, &h, &b).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn matches_pairwise_oracle(f in function_on(square(), false), g in function_on(square(), false)) {
        let b = square();
        let fast = convolve(&f, &g, &b).unwrap();
        let slow = brute_convolve(&f, &g, &b);
        prop_assert_eq!(fast.support().map(|(n, v)| (n.clone(), v.clone())).collect::<Vec<_>>(),
                        slow.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn identity_is_neutral(f in function_on(square(), false)) {
        let id = builtin("identity_I", square()).unwrap();
        prop_assert_eq!(convolve(&id, &f, &square()).unwrap(), f);
    }

    #[test]
    fn inverse_round_trip(f in function_on(square(), true)) {
        let b = square();
        let inv = invert(&f, &b).unwrap();
        prop_assert!(is_identity(&brute_convolve(&f, &inv, &b), 2));
    }

    #[test]
    fn inverse_of_product(f in function_on(square(), true), g in function_on(square(), true)) {
        let b = square();
        let lhs = invert(&convolve(&f, &g, &b).unwrap(), &b).unwrap();
        let rhs = convolve(&invert(&f, &b).unwrap(), &invert(&g, &b).unwrap(), &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive_group(f in function_on(square(), false), c in rational()) {
        prop_assert!(sub(&f, &f).unwrap().is_zero());
        let twice = add(&f, &f).unwrap();
        prop_assert_eq!(twice, scale(&int(2), &f));
        let scaled = convolve(&scale(&c, &f), &builtin("ones", square()).unwrap(), &square()).unwrap();
        let other = scale(&c, &convolve(&f, &builtin("ones", square()).unwrap(), &square()).unwrap());
        prop_assert_eq!(scaled, other);
    }

    #[test]
    fn norm_is_multiplicative(f in function_on(square(), false), g in function_on(square(), false)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (nf, ng) = (min_support_product(&f).unwrap(), min_support_product(&g).unwrap());
        // every index of product <= 8 lies in the 8x8 cube
        prop_assume!(nf * ng <= 8);
        let h = convolve(&f, &g, &square()).unwrap();
        prop_assert_eq!(norm(&h).value, nf * ng);
    }

    #[test]
    fn prime_position_map_is_multiplicative(f in function_on(IndexBox::product(2, 12).unwrap(), false),
                                             g in function_on(IndexBox::product(2, 12).unwrap(), false)) {
        let b = IndexBox::product(2, 12).unwrap();
        let basis = PrimePositionBasis::for_box(&b);
        let lhs = encode_r(&convolve(&f, &g, &b).unwrap(), &basis).unwrap();
        let rhs = series_mul(&encode_r(&f, &basis).unwrap(), &encode_r(&g, &basis).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_subring_closed(f in function_on(IndexBox::cube(3, 5).unwrap(), true),
                           g in function_on(IndexBox::cube(3, 5).unwrap(), true)) {
        let b = IndexBox::cube(3, 5).unwrap();
        let keep = |h: &ArithFunction| ArithFunction::from_entries(
            b, h.support().filter(|(n, _)| weak_chain(n.entries())).map(|(n, v)| (n.clone(), v.clone())).collect::<Vec<_>>()
        ).unwrap();
        let (f, g) = (keep(&f), keep(&g));
        let h = convolve(&f, &g, &b).unwrap();
        prop_assert!(subring_membership(&h, Subring::Star));
        prop_assert!(h.support().all(|(n, _)| weak_chain(n.entries())));
        let inv = invert(&f, &b).unwrap();
        prop_assert!(inv.support().all(|(n, _)| weak_chain(n.entries())));
    }
}
