//! Norms, divisibility on a box, prime certificates and subring membership.

use mdir::ring::{add, convolve};
use mdir::ufd::{divides_on_box, equivalent_on_box, norm, norm_prime_certificate, subring_membership, Subring};
use mdir::{builtin, ArithFunction, IndexBox, MultiIndex, Scalar};

fn point(domain: IndexBox, n: &[u64], v: i64) -> mdir::Result<ArithFunction> {
    ArithFunction::from_entries(domain, [(MultiIndex::new(n.to_vec())?, Scalar::from_integer(v.into()))])
}

fn main() -> mdir::Result<()> {
    let b = IndexBox::cube(2, 12)?;
    let f = add(&point(b, &[1, 2], 1)?, &point(b, &[3, 1], -2)?)?;
    let g = add(&point(b, &[2, 3], 1)?, &point(b, &[5, 1], 1)?)?;
    let fg = convolve(&f, &g, &b)?;
    println!("N(f) = {}, N(g) = {}, N(fg) = {}", norm(&f).value, norm(&g).value, norm(&fg).value);
    println!("f prime by norm: {:?}", norm_prime_certificate(&f)?);
    println!("g prime by norm: {:?}", norm_prime_certificate(&g)?);

    match divides_on_box(&f, &fg, &b)? {
        mdir::ufd::Divisibility::SolvableOnBox(h) => println!("f | fg on the box, quotient has {} terms", h.support_len()),
        mdir::ufd::Divisibility::Inconsistent => println!("f does not divide fg"),
    }
    let associate = convolve(&f, &builtin("u_star", b)?, &b)?;
    println!("f ~ f*u_star on the box: {}", equivalent_on_box(&f, &associate, &b)?.equivalent);

    let cube3 = IndexBox::cube(3, 8)?;
    for name in ["u_star", "u_EZ", "u_MT", "u_AV"] {
        let h = builtin(name, cube3)?;
        let member: Vec<&str> = [Subring::Star, Subring::EulerZagier, Subring::MordellTornheim, Subring::ApostolVu]
            .into_iter()
            .filter(|&s| subring_membership(&h, s))
            .map(|s| s.name())
            .collect();
        println!("{name:<7} lies in {}", member.join(", "));
    }
    Ok(())
}
