//! Certified values of the double zeta star function.
//!
//! `ζ*_2(2,2) = 7π⁴/360 < 2`, so `(2,2)` lies in the set where the star
//! series stays below 2 even though it misses the region built from the
//! inverse growth exponents.

use mdir::analysis::{find_alpha, in_region_zfr2, AlphaSearch, GrowthBound};
use mdir::series::{eval_certified, s_prime_membership, star_decomposition_check, BuiltinSeries, SeriesPoint};
use mdir::Builtin;
use std::f64::consts::PI;

fn main() -> mdir::Result<()> {
    let star = BuiltinSeries::new(Builtin::Star, 2)?;
    let bound = GrowthBound::bounded(1.0, 2)?;
    let s = SeriesPoint::real(&[2.0, 2.0])?;
    println!("7π⁴/360 = {:.9}", 7.0 * PI.powi(4) / 360.0);
    for t in [100, 400, 2000] {
        let r = eval_certified(&star, &bound, &s, t)?;
        println!("T={t:<5} value {:.9} ± {:.3e}", r.value.re, r.tail_radius);
    }

    for (p, t) in [([2.0, 2.0], 200), ([0.5, 2.6], 400), ([3.0, 4.0], 200)] {
        let r = star_decomposition_check(&SeriesPoint::real(&p)?, t)?;
        println!("star = EZ + zeta(s1+s2) at {p:?}: delta {:.2e} <= slack {:.2e}: {}", r.delta, r.slack, r.pass);
    }

    let alpha = find_alpha(&bound, 1.0, &AlphaSearch::default())?.alpha;
    println!("(2,2): S' membership {:?}, zfr2 {}", s_prime_membership(&s, 400)?, in_region_zfr2(s.coords(), &alpha));
    Ok(())
}
