//! The prime-position encoding turns Dirichlet products into products of
//! power series: the i-th prime in coordinate j becomes the variable with
//! slot k(i-1)+j.

use mdir::ring::convolve;
use mdir::ufd::encoding::{alpha_exponents, encode_r, series_mul, PrimePositionBasis};
use mdir::{builtin, IndexBox, MultiIndex};

fn main() -> mdir::Result<()> {
    let domain = IndexBox::product(2, 24)?;
    let basis = PrimePositionBasis::for_box(&domain);
    for n in [[12u64, 5], [1, 9], [6, 6]] {
        let e = alpha_exponents(&MultiIndex::new(n.to_vec())?, &basis)?;
        let terms: Vec<String> = e.entries().map(|(slot, p)| format!("x{slot}^{p}")).collect();
        println!("{:?} -> {}", n, terms.join(" "));
    }

    let f = builtin("u_star", domain)?;
    let g = builtin("ones", domain)?;
    let direct = encode_r(&convolve(&f, &g, &domain)?, &basis)?;
    let product = series_mul(&encode_r(&f, &basis)?, &encode_r(&g, &basis)?)?;
    println!("R(f*g) == R(f)R(g) on the box image: {}", direct == product);
    println!("{} monomials", direct.monomials().count());
    Ok(())
}
