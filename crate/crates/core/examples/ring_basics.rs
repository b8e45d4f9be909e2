//! Convolution and inversion on a finite box.
//!
//! The star indicator squared counts weak-chain factorizations, and the
//! inverse of `ones` in one variable is the Möbius function.

use mdir::ring::{convolve, invert};
use mdir::{builtin, IndexBox, MultiIndex};

fn main() -> mdir::Result<()> {
    let cube = IndexBox::cube(2, 8)?;
    let star = builtin("u_star", cube)?;
    let square = convolve(&star, &star, &cube)?;
    println!("(u* * u*)(2,2) = {}", square.get(&MultiIndex::new(vec![2, 2])?));
    println!("(u* * u*)(4,8) = {}", square.get(&MultiIndex::new(vec![4, 8])?));

    let inv = invert(&star, &cube)?;
    println!("inverse of u* on {cube}:");
    for (n, v) in inv.support() {
        println!("  {n} -> {v}");
    }

    let line = IndexBox::cube(1, 30)?;
    let mu = invert(&builtin("ones", line)?, &line)?;
    let values: Vec<String> = line.indices().iter().map(|n| mu.get(n).to_string()).collect();
    println!("mu(1..30) = {}", values.join(" "));
    Ok(())
}
