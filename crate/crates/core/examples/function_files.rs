//! Writing and reading function files, and the value table export.

use mdir::io::{function_from_json, function_to_json};
use mdir::ring::invert;
use mdir::{builtin, IndexBox};

fn main() -> mdir::Result<()> {
    let domain = IndexBox::product(2, 12)?;
    let inv = invert(&builtin("u_star", domain)?, &domain)?;
    let text = function_to_json(&inv)?;
    println!("{text}");
    let back = function_from_json(&text)?;
    println!("round trip exact: {}", back == inv);
    Ok(())
}
