//! Checks `F(s; f) F(s; f^-1) = 1` for the star indicator and for
//! `u_EZ + I`, with the inverse bounded through `find_alpha`.
//!
//! ```text
//! cargo run --release --example reciprocal_identity -- 300
//! ```

use mdir::analysis::{find_alpha, AlphaSearch, GrowthBound};
use mdir::ring::add;
use mdir::series::{reciprocal_check, BuiltinSeries, Coefficients, SeriesPoint};
use mdir::{builtin, Builtin, IndexBox};
use std::time::Instant;

fn main() -> mdir::Result<()> {
    let t: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(120);
    let ez_plus_one = {
        let cube = IndexBox::cube(2, t)?;
        add(&builtin("u_EZ", cube)?, &builtin("identity_I", cube)?)?
    };
    let star = |k| BuiltinSeries::new(Builtin::Star, k);
    let cases: Vec<(&str, Box<dyn Coefficients>, Vec<f64>)> = vec![
        ("u_star", Box::new(star(1)?), vec![4.0]),
        ("u_star", Box::new(star(2)?), vec![4.5, 4.5]),
        ("u_star", Box::new(star(3)?), vec![5.0, 5.0, 5.0]),
        ("u_EZ + I", Box::new(ez_plus_one), vec![4.5, 4.5]),
    ];
    for (name, f, s) in cases {
        let start = Instant::now();
        let k = s.len();
        let bound = GrowthBound::bounded(1.0, k)?;
        let fit = find_alpha(&bound, 1.0, &AlphaSearch::default())?;
        let r = reciprocal_check(f.as_ref(), &bound, &fit.alpha, &SeriesPoint::real(&s)?, t)?;
        println!(
            "{name:<9} k={k} alpha={:.6} F(f)={:.12} F(f^-1)={:.12} |prod-1|={:.3e} radius={:.3e} {} ({:.2?})",
            fit.offset,
            r.value_f.value.re,
            r.value_finv.value.re,
            r.deviation,
            r.combined_radius,
            if r.pass { "pass" } else { "FAIL" },
            start.elapsed()
        );
    }
    Ok(())
}
