//! Prime-position encoding of `Ω_k` into power series in countably many
//! indeterminates.
//!
//! Every index `m` factors uniquely into the generators
//! `(1,…,1,p,1,…,1)` (prime `p` at position `j`). Enumerating the generators
//! as slots gives exponents `α(m)`, and `R(f) = Σ f(m) x^{α(m)}` turns the
//! multiple Dirichlet product into ordinary multiplication of series.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::function::{ArithFunction, Scalar};
use crate::index::{IndexBox, MultiIndex};
use crate::numtheory::{factorize, first_primes, primes_up_to};

/// Enumeration of the generators: slot `m = k·(i-1) + j` for the `i`-th
/// prime at position `j` (both 1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePositionBasis {
    k: usize,
    primes: Vec<u64>,
}

impl PrimePositionBasis {
    /// Basis able to encode every index whose coordinates are at most `max_value`.
    pub fn covering(k: usize, max_value: u64) -> Self {
        PrimePositionBasis { k, primes: primes_up_to(max_value.max(2)) }
    }

    /// Basis able to decode every slot up to `max_slot`.
    pub fn with_slots(k: usize, max_slot: u64) -> Self {
        let count = (max_slot as usize).div_ceil(k).max(1);
        PrimePositionBasis { k, primes: first_primes(count) }
    }

    pub fn for_box(domain: &IndexBox) -> Self {
        Self::covering(domain.arity(), domain.max_coordinate())
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    /// Slot of prime `p` at 1-based `position`.
    pub fn slot(&self, p: u64, position: usize) -> Option<u64> {
        if position == 0 || position > self.k {
            return None;
        }
        let i = self.primes.binary_search(&p).ok()? as u64 + 1;
        Some(self.k as u64 * (i - 1) + position as u64)
    }

    /// Inverse of [`slot`](Self::slot): `(prime, position)`.
    pub fn generator(&self, slot: u64) -> Option<(u64, usize)> {
        if slot == 0 {
            return None;
        }
        let k = self.k as u64;
        let i = (slot - 1) / k;
        let j = (slot - 1) % k + 1;
        self.primes.get(i as usize).map(|&p| (p, j as usize))
    }
}

/// Finite-support exponent sequence `slot -> power`; zero powers are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(BTreeMap<u64, u32>);

impl ExponentVector {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, slot: u64) -> u32 {
        self.0.get(&slot).copied().unwrap_or(0)
    }

    /// `(slot, power)` pairs with ascending slots.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.0.iter().map(|(&s, &p)| (s, p))
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u64, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (s, p) in entries {
            if p > 0 {
                *map.entry(s).or_insert(0) += p;
            }
        }
        ExponentVector(map)
    }

    /// Monomial product: exponents add.
    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        let mut out = self.0.clone();
        for (&s, &p) in &other.0 {
            *out.entry(s).or_insert(0) += p;
        }
        ExponentVector(out)
    }

    /// The index whose exponents these are; `None` for slots the basis cannot name.
    pub fn decode(&self, basis: &PrimePositionBasis) -> Option<MultiIndex> {
        let mut entries = vec![1u64; basis.arity()];
        for (&s, &pow) in &self.0 {
            let (p, j) = basis.generator(s)?;
            let factor = p.checked_pow(pow)?;
            entries[j - 1] = entries[j - 1].checked_mul(factor)?;
        }
        MultiIndex::new(entries).ok()
    }
}

/// `α(n)`: exponents of `n` over the prime-position generators.
pub fn alpha_exponents(n: &MultiIndex, basis: &PrimePositionBasis) -> Result<ExponentVector> {
    if n.arity() != basis.arity() {
        return Err(Error::ArityMismatch { left: basis.arity(), right: n.arity() });
    }
    let mut map = BTreeMap::new();
    for (j, &e) in n.entries().iter().enumerate() {
        for (p, pow) in factorize(e) {
            let slot = basis
                .slot(p, j + 1)
                .ok_or_else(|| Error::InvalidArgument(format!("prime {p} is beyond the basis table")))?;
            map.insert(slot, pow);
        }
    }
    Ok(ExponentVector(map))
}

/// `R(f)` truncated to the monomials that are images of box indices.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    basis: PrimePositionBasis,
    domain: IndexBox,
    coeffs: BTreeMap<ExponentVector, Scalar>,
}

impl TruncatedSeries {
    pub fn domain(&self) -> &IndexBox {
        &self.domain
    }

    pub fn basis(&self) -> &PrimePositionBasis {
        &self.basis
    }

    /// Nonzero monomials, ordered by exponent vector.
    pub fn monomials(&self) -> impl Iterator<Item = (&ExponentVector, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Scalar {
        self.coeffs.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    fn in_image(&self, e: &ExponentVector) -> bool {
        e.decode(&self.basis).is_some_and(|n| self.domain.contains(&n))
    }
}

/// `R(f) = Σ f(m) x^{α(m)}` over the box.
pub fn encode_r(f: &ArithFunction, basis: &PrimePositionBasis) -> Result<TruncatedSeries> {
    let mut coeffs = BTreeMap::new();
    for (n, v) in f.support() {
        coeffs.insert(alpha_exponents(n, basis)?, v.clone());
    }
    Ok(TruncatedSeries { basis: basis.clone(), domain: *f.domain(), coeffs })
}

/// Product of two truncated series on the same box, keeping only monomials
/// that are images of box indices.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    if a.basis != b.basis {
        return Err(Error::InvalidArgument("series use different bases".into()));
    }
    let domain = a.domain.intersect(&b.domain)?;
    let mut out = TruncatedSeries { basis: a.basis.clone(), domain, coeffs: BTreeMap::new() };
    for (ea, ca) in &a.coeffs {
        for (eb, cb) in &b.coeffs {
            let e = ea.add(eb);
            if !out.in_image(&e) {
                continue;
            }
            *out.coeffs.entry(e).or_insert_with(Scalar::zero) += ca * cb;
        }
    }
    out.coeffs.retain(|_, v| !v.is_zero());
    Ok(out)
}
