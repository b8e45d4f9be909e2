
use mdir::analysis::{find_alpha, AlphaSearch, GrowthBound};
use mdir::ring::invert;
use mdir::series::{
    chain_tail_radius, eval_certified, eval_truncated, invert_on_cube, reciprocal_check, s_prime_membership, tail_radius,
    BuiltinSeries, SPrime, SeriesPoint,
};
use mdir::{builtin, Builtin, Error, IndexBox};
use num_complex::Complex64;
use std::f64::consts::PI;

fn point(s: &[f64]) -> SeriesPoint {
    SeriesPoint::real(s).unwrap()
}

#[test]
fn zeta_two_containment() {
    let ones = BuiltinSeries::new(Builtin::Ones, 1).unwrap();
    let b = GrowthBound::bounded(1.0, 1).unwrap();
    for t in [100, 1000, 10_000] {
        let r = eval_certified(&ones, &b, &point(&[2.0]), t).unwrap();
        assert!(r.contains(Complex64::new(PI * PI / 6.0, 0.0)), "T = {t}");
    }
}

#[test]
fn direct_sum_oracle() {
    // independent double loop for the star series at a complex point
    let s = [Complex64::new(2.5, 3.0), Complex64::new(3.0, -1.0)];
    let mut expected = Complex64::new(0.0, 0.0);
    for m1 in 1..=30u64 {
        for m2 in m1..=30u64 {
            expected += (-s[0] * (m1 as f64).ln()).exp() * (-s[1] * (m2 as f64).ln()).exp();
        }
    }
    let star = BuiltinSeries::new(Builtin::Star, 2).unwrap();
    let got = eval_truncated(&star, &SeriesPoint::new(s.to_vec()).unwrap(), 30).unwrap();
    assert!((got - expected).norm() < 1e-13);
}

#[test]
fn tail_radius_shrinks_with_doubling() {
    let b = GrowthBound::new(3.0, vec![0.5, 1.0]).unwrap();
    let s = point(&[3.0, 4.0]);
    let mut prev = f64::INFINITY;
    let mut t = 8;
    while t <= 4096 {
        let r = tail_radius(&b, &s, t).unwrap();
        assert!(r < prev, "T = {t}");
        prev = r;
        t *= 2;
    }
    assert!(matches!(tail_radius(&b, &point(&[1.5, 4.0]), 10), Err(Error::OutOfRegion(_))));
}

#[test]
fn chain_tail_limits() {
    let b = GrowthBound::bounded(1.0, 3).unwrap();
    assert!(matches!(chain_tail_radius(&b, &point(&[0.5, 2.0, 3.0]), 10), Err(Error::OutOfRegion(_))));
    let b2 = GrowthBound::bounded(1.0, 2).unwrap();
    assert!(matches!(chain_tail_radius(&b2, &point(&[0.5, 1.2]), 10), Err(Error::OutOfRegion(_))));
}

#[test]
fn inverse_of_star_has_certified_value() {
    let fit = find_alpha(&GrowthBound::bounded(1.0, 2).unwrap(), 1.0, &AlphaSearch::default()).unwrap();
    let star = BuiltinSeries::new(Builtin::Star, 2).unwrap();
    let inv = invert_on_cube(&star, 200).unwrap();
    let b = GrowthBound::new(1.0, fit.alpha.values().to_vec()).unwrap();
    let r = eval_certified(&inv, &b, &point(&[4.5, 4.5]), 200).unwrap();
    assert!(r.value.re.is_finite() && r.tail_radius.is_finite() && r.tail_radius > 0.0);
}

#[test]
fn kernel_agrees_with_rational_inverse() {
    let cube = IndexBox::cube(3, 7).unwrap();
    let star = builtin("u_star", cube).unwrap();
    let exact = invert(&star, &cube).unwrap();
    let lazy = invert_on_cube(&BuiltinSeries::new(Builtin::Star, 3).unwrap(), 7).unwrap();
    assert_eq!(lazy.to_function().unwrap(), exact);
}

#[test]
fn reciprocal_at_three_points_each() {
    let points: [(usize, [&[f64]; 3]); 3] = [
        (1, [&[3.0], &[4.0], &[6.0]]),
        (2, [&[4.5, 4.5], &[4.0, 5.0], &[6.0, 4.0]]),
        (3, [&[5.0, 5.0, 5.0], &[4.5, 5.5, 6.0], &[6.0, 6.0, 4.5]]),
    ];
    for (k, ss) in points {
        let b = GrowthBound::bounded(1.0, k).unwrap();
        let fit = find_alpha(&b, 1.0, &AlphaSearch::default()).unwrap();
        let star = BuiltinSeries::new(Builtin::Star, k).unwrap();
        for s in ss {
            let r = reciprocal_check(&star, &b, &fit.alpha, &point(s), 40).unwrap();
            assert!(r.pass, "k={k} s={s:?}: {r:?}");
        }
    }
    let cube = IndexBox::cube(2, 60).unwrap();
    let ez1 = mdir::ring::add(&builtin("u_EZ", cube).unwrap(), &builtin("identity_I", cube).unwrap()).unwrap();
    let b = GrowthBound::bounded(1.0, 2).unwrap();
    let fit = find_alpha(&b, 1.0, &AlphaSearch::default()).unwrap();
    for s in [[4.5, 4.5], [4.0, 5.0], [3.5, 6.5]] {
        assert!(reciprocal_check(&ez1, &b, &fit.alpha, &point(&s), 60).unwrap().pass, "{s:?}");
    }
}

#[test]
fn conjugate_symmetry() {
    let s: SeriesPoint = "2.2,4;3,-1.5".parse().unwrap();
    for kind in Builtin::ALL {
        let f = BuiltinSeries::new(kind, 2).unwrap();
        let a = eval_truncated(&f, &s, 25).unwrap();
        let b = eval_truncated(&f, &s.conj(), 25).unwrap();
        assert!((a.conj() - b).norm() < 1e-14, "{kind}");
    }
}

#[test]
fn s_prime_near_boundary() {
    for t in [50, 200] {
        assert_ne!(s_prime_membership(&point(&[1.02, 1.05]), t).unwrap(), SPrime::Inside);
    }
    assert_eq!(s_prime_membership(&point(&[4.0, 4.0]), 50).unwrap(), SPrime::Inside);
    assert!(matches!(s_prime_membership(&point(&[1.5, 0.5]), 50), Err(Error::OutOfRegion(_))));
}
