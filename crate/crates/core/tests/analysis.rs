mod common;

use common::*;
use mdir::analysis::{
    divisor_power_sum, find_alpha, in_region_abs_ez, in_region_zfr, in_region_zfr2, inverse_bound_check,
    verify_growth_bound, zeta_enclosure, AlphaSearch, AlphaVector, GrowthBound,
};
use mdir::ring::add;
use mdir::{builtin, Error, IndexBox};
use num_complex::Complex64;
use proptest::prelude::*;

fn real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

#[test]
fn enclosures_contain_euler_maclaurin_values() {
    for a in [1.1, 1.5, 1.7286, 2.0, 2.3352, 3.0, 7.5] {
        let e = zeta_enclosure(a, 5000).unwrap();
        assert!(e.contains(zeta_em(a)), "a = {a}: {e:?} vs {}", zeta_em(a));
    }
}

#[test]
fn pole_guard() {
    assert!(matches!(zeta_enclosure(1.0000001, 10), Err(Error::PoleGuard(_))));
    assert!(matches!(zeta_enclosure(0.5, 10), Err(Error::PoleGuard(_))));
}

#[test]
fn divisor_sums() {
    assert_eq!(divisor_power_sum(12, 0.0), 6.0);
    assert_eq!(divisor_power_sum(12, 1.0), 28.0);
    assert!((divisor_power_sum(12, -1.0) - 28.0 / 12.0).abs() < 1e-15);
}

#[test]
fn alpha_search_is_minimal_on_grid() {
    let search = AlphaSearch::default();
    for k in 1..=3 {
        let fit = find_alpha(&GrowthBound::bounded(1.0, k).unwrap(), 1.0, &search).unwrap();
        let t = fit.offset;
        assert!(zeta_em(t).powi(k as i32) <= 2.0);
        assert!(zeta_em(t - 2.0 * search.grid).powi(k as i32) > 2.0, "k = {k}");
    }
    // a larger |f(1)| relaxes the threshold
    let relaxed = find_alpha(&GrowthBound::bounded(1.0, 2).unwrap(), 3.0, &search).unwrap();
    assert!(relaxed.offset < 2.3);
    // exponents shift alpha
    let shifted = find_alpha(&GrowthBound::new(1.0, vec![0.5, 1.0]).unwrap(), 1.0, &search).unwrap();
    assert!((shifted.alpha.values()[1] - shifted.alpha.values()[0] - 0.5).abs() < 1e-12);
}

#[test]
fn inverse_bounds_up_to_fourteen() {
    let search = AlphaSearch::default();
    let fit = find_alpha(&GrowthBound::bounded(1.0, 2).unwrap(), 1.0, &search).unwrap();
    let b = IndexBox::cube(2, 14).unwrap();
    assert!(verify_growth_bound(&builtin("u_star", b).unwrap(), &GrowthBound::bounded(1.0, 2).unwrap()));
    assert!(inverse_bound_check(&builtin("u_star", b).unwrap(), &fit.alpha, &b).unwrap());
    let ez1 = add(&builtin("u_EZ", b).unwrap(), &builtin("identity_I", b).unwrap()).unwrap();
    assert!(inverse_bound_check(&ez1, &fit.alpha, &b).unwrap());
    // far too small exponents fail
    assert!(!inverse_bound_check(&builtin("ones", b).unwrap(), &AlphaVector::uniform(-1.0, 2), &b).unwrap());
}

#[test]
fn region_examples() {
    let alpha = AlphaVector::uniform(2.335207, 2);
    assert!(in_region_zfr(&real(&[4.0, 4.0]), &alpha));
    assert!(!in_region_zfr(&real(&[2.0, 2.0]), &alpha));
    assert!(!in_region_zfr2(&real(&[2.0, 2.0]), &alpha));
    assert!(in_region_abs_ez(&real(&[2.0, 2.0])));
    assert!(in_region_abs_ez(&real(&[0.5, 2.6])));
    assert!(!in_region_abs_ez(&real(&[1.5, 0.5])));
    // boundaries are excluded
    assert!(!in_region_abs_ez(&real(&[1.0, 1.0])));
}

proptest! {
    #[test]
    fn zfr_implies_zfr2(a in proptest::collection::vec(0.0f64..4.0, 1..4), shift in proptest::collection::vec(0.0f64..3.0, 1..4)) {
        let k = a.len().min(shift.len());
        let alpha = AlphaVector(a[..k].to_vec());
        let s: Vec<Complex64> = (0..k).map(|j| Complex64::new(1.0 + alpha.0[j] + shift[j] + 1e-9, shift[j] * 7.0)).collect();
        prop_assert!(in_region_zfr(&s, &alpha));
        prop_assert!(in_region_zfr2(&s, &alpha));
    }

    #[test]
    fn imaginary_parts_are_irrelevant(re in proptest::collection::vec(-1.0f64..6.0, 2), im in proptest::collection::vec(-1e6f64..1e6, 2)) {
        let alpha = AlphaVector::uniform(1.0, 2);
        let a: Vec<Complex64> = re.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let b: Vec<Complex64> = re.iter().zip(&im).map(|(&x, &y)| Complex64::new(x, y)).collect();
        prop_assert_eq!(in_region_zfr(&a, &alpha), in_region_zfr(&b, &alpha));
        prop_assert_eq!(in_region_zfr2(&a, &alpha), in_region_zfr2(&b, &alpha));
        prop_assert_eq!(in_region_abs_ez(&a), in_region_abs_ez(&b));
    }

    #[test]
    fn enclosure_brackets_reference(a in 1.01f64..12.0) {
        let e = zeta_enclosure(a, 2000).unwrap();
        prop_assert!(e.lower <= e.upper);
        prop_assert!(e.contains(zeta_em(a)));
    }
}
