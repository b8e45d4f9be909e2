//! Oracles written independently of the library internals.
#![allow(dead_code)]

use mdir::{ArithFunction, IndexBox, MultiIndex, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use std::collections::BTreeMap;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn idx(v: &[u64]) -> MultiIndex {
    MultiIndex::new(v.to_vec()).unwrap()
}

/// Trial-division factorization.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    let f = prime_factors(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Position of a prime among the primes, 1-based.
pub fn prime_position(p: u64) -> u64 {
    (2..=p).filter(|&q| (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)).count() as u64
}

/// Exponent map of the prime-position encoding: the i-th prime in
/// coordinate j (1-based) lives in slot k(i-1)+j.
pub fn alpha_oracle(n: &[u64]) -> BTreeMap<u64, u32> {
    let k = n.len() as u64;
    let mut out = BTreeMap::new();
    for (j, &v) in n.iter().enumerate() {
        for (p, e) in prime_factors(v) {
            let slot = k * (prime_position(p) - 1) + j as u64 + 1;
            *out.entry(slot).or_insert(0) += e;
        }
    }
    out
}

/// Pairwise Dirichlet product over the supports, keeping products in the box.
pub fn brute_convolve(f: &ArithFunction, g: &ArithFunction, domain: &IndexBox) -> BTreeMap<MultiIndex, Scalar> {
    let mut out: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
    for (a, fa) in f.support() {
        for (b, gb) in g.support() {
            let n = MultiIndex::new(a.entries().iter().zip(b.entries()).map(|(x, y)| x * y).collect()).unwrap();
            if domain.contains(&n) {
                *out.entry(n).or_insert_with(Scalar::zero) += fa * gb;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn is_identity(values: &BTreeMap<MultiIndex, Scalar>, k: usize) -> bool {
    values.len() == 1 && values.get(&MultiIndex::one(k)) == Some(&int(1))
}

pub fn min_support_product(f: &ArithFunction) -> Option<u64> {
    f.support().map(|(n, _)| n.entries().iter().product()).min()
}

pub fn weak_chain(n: &[u64]) -> bool {
    n.windows(2).all(|w| w[0] <= w[1])
}

pub fn strict_chain(n: &[u64]) -> bool {
    n.windows(2).all(|w| w[0] < w[1])
}

pub fn last_dominates(n: &[u64]) -> bool {
    let (last, rest) = n.split_last().unwrap();
    *last >= rest.iter().sum::<u64>()
}

/// `ζ(a)` by Euler–Maclaurin with cutoff `N` and three correction terms;
/// accurate far beyond `f64` for `a > 1.5`, `N = 1000`.
pub fn zeta_em(a: f64) -> f64 {
    let n = 1000.0f64;
    let head: f64 = (1..1000).rev().map(|m| (m as f64).powf(-a)).sum();
    let tail = n.powf(1.0 - a) / (a - 1.0) + 0.5 * n.powf(-a) + a / 12.0 * n.powf(-a - 1.0)
        - a * (a + 1.0) * (a + 2.0) / 720.0 * n.powf(-a - 3.0);
    head + tail
}

pub fn random_rational(rng: &mut impl Rng) -> Scalar {
    Scalar::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=9)))
}
