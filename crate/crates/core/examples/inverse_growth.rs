//! Growth of inverses: from `|f(n)| <= C` and `f(1) = 1`, pick exponents
//! with `ζ(α)^k <= 2` and confirm `|f^-1(n)| <= n_1^α ... n_k^α`.

use mdir::analysis::{find_alpha, inverse_bound_violation, AlphaSearch, GrowthBound};
use mdir::ring::add;
use mdir::{builtin, IndexBox};

fn main() -> mdir::Result<()> {
    let search = AlphaSearch::default();
    for k in 1..=3 {
        let fit = find_alpha(&GrowthBound::bounded(1.0, k)?, 1.0, &search)?;
        println!("k={k}: alpha = {:.6}, certified zeta product {:.9} <= {}", fit.offset, fit.product_upper, fit.threshold);
    }

    let fit = find_alpha(&GrowthBound::bounded(1.0, 2)?, 1.0, &search)?;
    for t in [6, 10, 14] {
        let cube = IndexBox::cube(2, t)?;
        let star = builtin("u_star", cube)?;
        let ez1 = add(&builtin("u_EZ", cube)?, &builtin("identity_I", cube)?)?;
        println!(
            "cube:{t}  u_star violation: {:?}  u_EZ+I violation: {:?}",
            inverse_bound_violation(&star, &fit.alpha, &cube)?,
            inverse_bound_violation(&ez1, &fit.alpha, &cube)?
        );
    }
    Ok(())
}
