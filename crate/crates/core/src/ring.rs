//! Ring operations of `(Ω_k, +, *)`: the multiple Dirichlet product, pointwise
//! addition and scaling, and the recursive inverse of a unit.
//!
//! Every result is exact. A result materialized on a box equals the restriction
//! of the global result to that box, because each value only consults values
//! at componentwise divisors, and boxes are divisor-closed.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::{ArithFunction, Scalar};
use crate::index::{for_each_divisor, IndexBox, MultiIndex};

fn check_arity(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::ArityMismatch { left, right });
    }
    Ok(())
}

fn check_covered(f: &ArithFunction, domain: &IndexBox) -> Result<()> {
    check_arity(f.arity(), domain.arity())?;
    if !domain.is_subset_of(f.domain()) {
        return Err(Error::BoxNotCovered { requested: domain.to_string(), available: f.domain().to_string() });
    }
    Ok(())
}

/// Divisor lists of `0..=max`; entry 0 is empty.
pub(crate) fn divisor_table(max: u64) -> Vec<Vec<u64>> {
    let m = max as usize;
    let mut table = vec![Vec::new(); m + 1];
    for d in 1..=m {
        let mut q = d;
        while q <= m {
            table[q].push(d as u64);
            q += d;
        }
    }
    table
}

/// Calls `visit(a, b)` for every factorization `a . b = n`.
pub(crate) fn for_each_factorization(table: &[Vec<u64>], n: &MultiIndex, mut visit: impl FnMut(&MultiIndex, &MultiIndex)) {
    let lists: Vec<Vec<u64>> = n.entries().iter().map(|&e| table[e as usize].clone()).collect();
    for_each_divisor(&lists, |a| {
        let b: Vec<u64> = n.entries().iter().zip(a).map(|(n, a)| n / a).collect();
        // entries are positive divisors, so both tuples are valid indices
        let a = MultiIndex::new(a.to_vec()).expect("positive divisor");
        let b = MultiIndex::new(b).expect("positive cofactor");
        visit(&a, &b);
    });
}

/// `(f * g)(n) = Σ_{a·b=n} f(a) g(b)` for every `n` in `domain`.
pub fn convolve(f: &ArithFunction, g: &ArithFunction, domain: &IndexBox) -> Result<ArithFunction> {
    check_arity(f.arity(), g.arity())?;
    check_covered(f, domain)?;
    check_covered(g, domain)?;
    let table = divisor_table(domain.max_coordinate());
    let values: BTreeMap<MultiIndex, Scalar> = domain
        .indices()
        .into_par_iter()
        .filter_map(|n| {
            let mut acc = Scalar::zero();
            for_each_factorization(&table, &n, |a, b| {
                if let (Some(x), Some(y)) = (f.value(a), g.value(b)) {
                    acc += x * y;
                }
            });
            (!acc.is_zero()).then_some((n, acc))
        })
        .collect();
    Ok(ArithFunction::from_sorted_map(*domain, values))
}

/// Pointwise sum on the intersection of the two domains.
pub fn add(f: &ArithFunction, g: &ArithFunction) -> Result<ArithFunction> {
    check_arity(f.arity(), g.arity())?;
    let domain = f.domain().intersect(g.domain())?;
    let mut values: BTreeMap<MultiIndex, Scalar> =
        f.support().filter(|(n, _)| domain.contains(n)).map(|(n, v)| (n.clone(), v.clone())).collect();
    for (n, v) in g.support().filter(|(n, _)| domain.contains(n)) {
        *values.entry(n.clone()).or_insert_with(Scalar::zero) += v;
    }
    Ok(ArithFunction::from_sorted_map(domain, values))
}

/// `c · f`.
pub fn scale(c: &Scalar, f: &ArithFunction) -> ArithFunction {
    let values = f.support().map(|(n, v)| (n.clone(), c * v)).collect();
    ArithFunction::from_sorted_map(*f.domain(), values)
}

/// `f - g` on the intersection of the domains.
pub fn sub(f: &ArithFunction, g: &ArithFunction) -> Result<ArithFunction> {
    add(f, &scale(&-Scalar::one(), g))
}

/// Inverse of a unit under `*`, materialized on `domain`.
///
/// Uses `f⁻¹(1) = 1/f(1)` and
/// `f⁻¹(n) = -(1/f(1)) Σ_{a·b=n, b≠n} f(a) f⁻¹(b)`, visiting indices by
/// ascending coordinate sum with lexicographic ties. The output is the exact
/// global inverse restricted to `domain`.
pub fn invert(f: &ArithFunction, domain: &IndexBox) -> Result<ArithFunction> {
    check_covered(f, domain)?;
    if !f.is_unit() {
        return Err(Error::NotAUnit);
    }
    let one = MultiIndex::one(f.arity());
    let recip = Scalar::one() / f.at_one();
    let neg_recip = -recip.clone();

    let mut order = domain.indices();
    order.sort_by(|a, b| a.sum().cmp(&b.sum()).then_with(|| a.cmp(b)));

    let table = divisor_table(domain.max_coordinate());
    let mut inv: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
    for n in order {
        if n == one {
            inv.insert(n, recip.clone());
            continue;
        }
        let mut acc = Scalar::zero();
        for_each_factorization(&table, &n, |a, b| {
            if a.is_one() {
                return;
            }
            if let (Some(x), Some(y)) = (f.value(a), inv.get(b)) {
                acc += x * y;
            }
        });
        if !acc.is_zero() {
            inv.insert(n, &neg_recip * acc);
        }
    }
    Ok(ArithFunction::from_sorted_map(*domain, inv))
}
