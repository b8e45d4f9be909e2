//! Inversion on a full cube `{1..T}^k`.
//!
//! Integer-valued units with `f(1) = ±1` have integer inverses, so for those
//! the recursion runs in checked `i128` over a flat table. When the input is
//! supported on weak chains the table only stores chains (the inverse stays
//! in the same subring), which keeps `k = 3, T = 300` at a few million
//! entries. Anything else goes through the exact rational path.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Chain, Coefficients};
use crate::error::{Error, Result};
use crate::function::{ArithFunction, Scalar};
use crate::index::{IndexBox, MultiIndex};
use crate::ring::{divisor_table, invert};

/// Largest table the integer kernel will allocate.
const TABLE_LIMIT: u64 = 20_000_000;
/// Largest cube handed to the rational inverse.
const RATIONAL_LIMIT: u64 = 250_000;

#[derive(Clone, Debug)]
enum Shape {
    Full,
    /// `prefix[j][v]` = number of weak chains of length `j + 1` in `[1, T]`
    /// whose first entry is below `v`.
    Chain { prefix: Vec<Vec<u64>> },
}

/// Integer coefficients on `{1..T}^k`, optionally restricted to weak chains.
#[derive(Clone, Debug)]
pub struct CubeTable {
    k: usize,
    t: u64,
    shape: Shape,
    values: Vec<i128>,
}

fn binomial(n: u64, r: u64) -> Option<u64> {
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    u64::try_from(acc).ok()
}

impl CubeTable {
    fn layout(k: usize, t: u64, chain: bool) -> Option<(Shape, u64)> {
        if !chain {
            let size = t.checked_pow(k as u32)?;
            return Some((Shape::Full, size));
        }
        let mut prefix = Vec::with_capacity(k);
        for j in 0..k as u64 {
            let mut row = vec![0u64; t as usize + 2];
            for v in 1..=t {
                // chains of length j starting at >= v
                let w = binomial(t - v + j, j)?;
                row[v as usize + 1] = row[v as usize].checked_add(w)?;
            }
            prefix.push(row);
        }
        let size = prefix[k - 1][t as usize + 1];
        Some((Shape::Chain { prefix }, size))
    }

    /// Offset contributed by entry `v` at position `pos` after `prev`.
    #[inline]
    fn step(&self, pos: usize, prev: u64, v: u64) -> u64 {
        let rem = self.k - 1 - pos;
        match &self.shape {
            Shape::Full => (v - 1) * self.t.pow(rem as u32),
            Shape::Chain { prefix } => prefix[rem][v as usize] - prefix[rem][prev as usize],
        }
    }

    fn rank(&self, n: &[u64]) -> Option<usize> {
        if n.iter().any(|&e| e == 0 || e > self.t) {
            return None;
        }
        if matches!(self.shape, Shape::Chain { .. }) && n.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let mut r = 0;
        let mut prev = 1;
        for (pos, &v) in n.iter().enumerate() {
            r += self.step(pos, prev, v);
            prev = v;
        }
        Some(r as usize)
    }

    fn chain(&self) -> Chain {
        match self.shape {
            Shape::Full => Chain::Free,
            Shape::Chain { .. } => Chain::Weak,
        }
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// Number of stored entries.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at `n`; zero off the stored shape.
    pub fn get(&self, n: &[u64]) -> i128 {
        self.rank(n).map_or(0, |r| self.values[r])
    }

    pub fn to_function(&self) -> Result<ArithFunction> {
        let domain = IndexBox::cube(self.k, self.t)?;
        let mut entries = Vec::new();
        self.for_each_exact(self.t, &mut |n, v| entries.push((MultiIndex::new(n.to_vec()).expect("cube index"), v.clone())));
        ArithFunction::from_entries(domain, entries)
    }

    fn walk(&self, t: u64, visit: &mut dyn FnMut(&[u64], i128)) {
        let mut cur = vec![0u64; self.k];
        let limit = t.min(self.t);
        super::walk_cube(&mut cur, 0, limit, self.chain(), &mut |n| {
            let v = self.values[self.rank(n).expect("walk stays in shape")];
            if v != 0 {
                visit(n, v)
            }
        });
    }
}

impl Coefficients for CubeTable {
    fn arity(&self) -> usize {
        self.k
    }

    fn covers_cube(&self, t: u64) -> bool {
        t <= self.t
    }

    fn at_one(&self) -> Scalar {
        Scalar::from_integer(BigInt::from(self.values[0]))
    }

    fn for_each_exact(&self, t: u64, visit: &mut dyn FnMut(&[u64], &Scalar)) {
        self.walk(t, &mut |n, v| visit(n, &Scalar::from_integer(BigInt::from(v))));
    }

    fn for_each_float(&self, t: u64, visit: &mut dyn FnMut(&[u64], f64, bool)) {
        self.walk(t, &mut |n, v| visit(n, v as f64, v.unsigned_abs() <= 1u128 << 53));
    }

    fn weak_chain_supported(&self, t: u64) -> bool {
        match self.shape {
            Shape::Chain { .. } => true,
            Shape::Full => {
                let mut ok = true;
                self.walk(t, &mut |n, _| ok &= n.windows(2).all(|w| w[0] <= w[1]));
                ok
            }
        }
    }
}

struct Recursion<'a> {
    table: &'a CubeTable,
    f: &'a [i128],
    inv: &'a [i128],
    divisors: &'a [Vec<u64>],
    n: &'a [u64],
    chain: bool,
}

impl Recursion<'_> {
    /// `Σ f(a) inv(n/a)` over `a | n`, `a ≠ 1`, both factors in shape.
    fn sum(&self, pos: usize, prev_a: u64, prev_b: u64, rank_a: u64, rank_b: u64, nontrivial: bool) -> Option<i128> {
        if pos == self.n.len() {
            if !nontrivial {
                return Some(0);
            }
            let fa = self.f[rank_a as usize];
            if fa == 0 {
                return Some(0);
            }
            return fa.checked_mul(self.inv[rank_b as usize]);
        }
        let m = self.n[pos];
        let mut acc: i128 = 0;
        for &a in &self.divisors[m as usize] {
            let b = m / a;
            if self.chain && (a < prev_a || b < prev_b) {
                continue;
            }
            let ra = rank_a + self.table.step(pos, prev_a, a);
            let rb = rank_b + self.table.step(pos, prev_b, b);
            let part = self.sum(pos + 1, a, b, ra, rb, nontrivial || a != 1)?;
            acc = acc.checked_add(part)?;
        }
        Some(acc)
    }
}

fn integer_inverse(f: &dyn Coefficients, t: u64, f1: i128) -> Option<CubeTable> {
    let k = f.arity();
    let chain = f.weak_chain_supported(t);
    let (shape, size) = CubeTable::layout(k, t, chain)?;
    if size > TABLE_LIMIT {
        return None;
    }
    let mut table = CubeTable { k, t, shape, values: Vec::new() };
    let mut fvals = vec![0i128; size as usize];
    let mut fits = true;
    f.for_each_exact(t, &mut |n, v| {
        let as_int = if v.is_integer() { v.numer().to_i128() } else { None };
        match (as_int, table.rank(n)) {
            (Some(x), Some(r)) => fvals[r] = x,
            _ => fits = false,
        }
    });
    if !fits {
        return None;
    }
    let divisors = divisor_table(t);
    let mut inv = vec![0i128; size as usize];
    let mut cur = vec![0u64; k];
    let mut next = 0usize;
    let mut overflow = false;
    super::walk_cube(&mut cur, 0, t, table.chain(), &mut |n| {
        if overflow {
            return;
        }
        let value = if next == 0 {
            Some(f1)
        } else {
            let rec = Recursion { table: &table, f: &fvals, inv: &inv, divisors: &divisors, n, chain };
            rec.sum(0, 1, 1, 0, 0, false).and_then(|acc| acc.checked_mul(f1)).and_then(i128::checked_neg)
        };
        match value {
            Some(v) => inv[next] = v,
            None => overflow = true,
        }
        next += 1;
    });
    if overflow {
        return None;
    }
    table.values = inv;
    Some(table)
}

/// Inverse of a unit restricted to `{1..T}^k`.
#[derive(Clone, Debug)]
pub enum CubeInverse {
    Integer(CubeTable),
    Rational(ArithFunction),
}

impl CubeInverse {
    pub fn to_function(&self) -> Result<ArithFunction> {
        match self {
            CubeInverse::Integer(t) => t.to_function(),
            CubeInverse::Rational(f) => Ok(f.clone()),
        }
    }

    fn inner(&self) -> &dyn Coefficients {
        match self {
            CubeInverse::Integer(t) => t,
            CubeInverse::Rational(f) => f,
        }
    }
}

impl Coefficients for CubeInverse {
    fn arity(&self) -> usize {
        self.inner().arity()
    }
    fn covers_cube(&self, t: u64) -> bool {
        self.inner().covers_cube(t)
    }
    fn at_one(&self) -> Scalar {
        self.inner().at_one()
    }
    fn for_each_exact(&self, t: u64, visit: &mut dyn FnMut(&[u64], &Scalar)) {
        self.inner().for_each_exact(t, visit)
    }
    fn for_each_float(&self, t: u64, visit: &mut dyn FnMut(&[u64], f64, bool)) {
        self.inner().for_each_float(t, visit)
    }
    fn weak_chain_supported(&self, t: u64) -> bool {
        self.inner().weak_chain_supported(t)
    }
}

/// Computes `f^{-1}` on `{1..T}^k`.
pub fn invert_on_cube(f: &dyn Coefficients, t: u64) -> Result<CubeInverse> {
    let f1 = f.at_one();
    if f1.is_zero() {
        return Err(Error::NotAUnit);
    }
    if t == 0 {
        return Err(Error::InvalidArgument("truncation must be at least 1".into()));
    }
    if !f.covers_cube(t) {
        return Err(Error::BoxNotCovered { requested: format!("cube:{t}"), available: "function domain".into() });
    }
    if f1.is_integer() && f1.abs().is_one() {
        let sign = if f1.is_positive() { 1 } else { -1 };
        if let Some(table) = integer_inverse(f, t, sign) {
            return Ok(CubeInverse::Integer(table));
        }
    }
    let k = f.arity();
    if t.checked_pow(k as u32).is_none_or(|n| n > RATIONAL_LIMIT) {
        return Err(Error::InvalidArgument(format!(
            "cube:{t} at k = {k} is too large for exact rational inversion"
        )));
    }
    let domain = IndexBox::cube(k, t)?;
    let mut entries = Vec::new();
    f.for_each_exact(t, &mut |n, v| entries.push((MultiIndex::new(n.to_vec()).expect("cube index"), v.clone())));
    let dense = ArithFunction::from_entries(domain, entries)?;
    Ok(CubeInverse::Rational(invert(&dense, &domain)?))
}
