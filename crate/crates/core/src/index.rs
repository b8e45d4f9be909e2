//! Multi-indices, truncation boxes and componentwise divisor enumeration.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A k-tuple of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u64>);

impl MultiIndex {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidIndex("arity must be at least 1".into()));
        }
        if entries.contains(&0) {
            return Err(Error::InvalidIndex(format!("{entries:?} has a zero entry")));
        }
        Ok(MultiIndex(entries))
    }

    /// The index `(1, ..., 1)`.
    pub fn one(k: usize) -> Self {
        MultiIndex(vec![1; k])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 1)
    }

    /// `n_1 * ... * n_k`, saturating at `u64::MAX`.
    pub fn product(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, &e| acc.saturating_mul(e))
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Componentwise product `a . b`.
    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.arity(), other.arity());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }

    /// Componentwise quotient, `None` unless `d` divides `self` in every coordinate.
    pub fn div_exact(&self, d: &MultiIndex) -> Option<MultiIndex> {
        if self.arity() != d.arity() {
            return None;
        }
        let mut out = Vec::with_capacity(self.arity());
        for (&n, &e) in self.0.iter().zip(&d.0) {
            if n % e != 0 {
                return None;
            }
            out.push(n / e);
        }
        Some(MultiIndex(out))
    }
}

impl From<MultiIndex> for Vec<u64> {
    fn from(n: MultiIndex) -> Self {
        n.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Finite, divisor-closed domain on which functions are materialized.
///
/// A box is the set of indices with every coordinate at most `cube` and
/// coordinate product at most `product`; at least one limit is present.
/// Both shapes (and their intersection) are closed under taking
/// componentwise divisors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexBox {
    k: usize,
    cube: Option<u64>,
    product: Option<u64>,
}

impl IndexBox {
    /// `{1..T}^k`.
    pub fn cube(k: usize, t: u64) -> Result<Self> {
        Self::checked(k, Some(t), None)
    }

    /// `{n : n_1 ... n_k <= T}`.
    pub fn product(k: usize, t: u64) -> Result<Self> {
        Self::checked(k, None, Some(t))
    }

    fn checked(k: usize, cube: Option<u64>, product: Option<u64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidBox("arity must be at least 1".into()));
        }
        if cube == Some(0) || product == Some(0) {
            return Err(Error::InvalidBox("limit must be positive".into()));
        }
        Ok(IndexBox { k, cube, product })
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn cube_limit(&self) -> Option<u64> {
        self.cube
    }

    pub fn product_limit(&self) -> Option<u64> {
        self.product
    }

    pub fn contains(&self, n: &MultiIndex) -> bool {
        if n.arity() != self.k {
            return false;
        }
        if let Some(t) = self.cube {
            if n.entries().iter().any(|&e| e > t) {
                return false;
            }
        }
        match self.product {
            Some(p) => n.product() <= p,
            None => true,
        }
    }

    /// Largest coordinate value that occurs in the box.
    pub fn max_coordinate(&self) -> u64 {
        match (self.cube, self.product) {
            (Some(c), Some(p)) => c.min(p),
            (Some(c), None) => c,
            (None, Some(p)) => p,
            (None, None) => unreachable!("box without limits"),
        }
    }

    /// Largest coordinate product that occurs in the box (saturating).
    pub fn max_product(&self) -> u64 {
        match (self.cube, self.product) {
            (Some(c), None) => (0..self.k).fold(1u64, |acc, _| acc.saturating_mul(c)),
            (None, Some(p)) => p,
            _ => self.indices().iter().map(MultiIndex::product).max().unwrap_or(1),
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &IndexBox) -> bool {
        if self.k != other.k {
            return false;
        }
        if let Some(c) = other.cube {
            if self.max_coordinate() > c {
                return false;
            }
        }
        if let Some(p) = other.product {
            if self.max_product() > p {
                return false;
            }
        }
        true
    }

    pub fn intersect(&self, other: &IndexBox) -> Result<IndexBox> {
        if self.k != other.k {
            return Err(Error::ArityMismatch { left: self.k, right: other.k });
        }
        if self.is_subset_of(other) {
            return Ok(*self);
        }
        if other.is_subset_of(self) {
            return Ok(*other);
        }
        let min = |a: Option<u64>, b: Option<u64>| match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        Ok(IndexBox { k: self.k, cube: min(self.cube, other.cube), product: min(self.product, other.product) })
    }

    /// All members in lexicographic order.
    pub fn indices(&self) -> Vec<MultiIndex> {
        let cap = self.max_coordinate();
        let prod_cap = self.product.unwrap_or(u64::MAX);
        let mut out = Vec::new();
        let mut cur = vec![1u64; self.k];
        fill(&mut out, &mut cur, 0, 1, cap, prod_cap);
        out
    }

    pub fn len(&self) -> usize {
        self.indices().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u64>, pos: usize, prod: u64, cap: u64, prod_cap: u64) {
    if pos == cur.len() {
        out.push(MultiIndex(cur.clone()));
        return;
    }
    let mut v = 1u64;
    while v <= cap {
        let p = prod.saturating_mul(v);
        if p > prod_cap {
            break;
        }
        cur[pos] = v;
        fill(out, cur, pos + 1, p, cap, prod_cap);
        v += 1;
    }
    cur[pos] = 1;
}

impl fmt::Display for IndexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.cube, self.product) {
            (Some(c), None) => write!(f, "cube:{c}"),
            (None, Some(p)) => write!(f, "product:{p}"),
            (Some(c), Some(p)) => write!(f, "cube:{c}&product:{p}"),
            (None, None) => unreachable!("box without limits"),
        }
    }
}

/// Box shape without arity, as written on the command line (`cube:8`, `product:30`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxShape {
    Cube(u64),
    Product(u64),
}

impl BoxShape {
    pub fn with_arity(self, k: usize) -> Result<IndexBox> {
        match self {
            BoxShape::Cube(t) => IndexBox::cube(k, t),
            BoxShape::Product(t) => IndexBox::product(k, t),
        }
    }
}

impl FromStr for BoxShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mode, t) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidBox(format!("expected mode:T, got `{s}`")))?;
        let t: u64 = t.trim().parse().map_err(|_| Error::InvalidBox(format!("bad limit in `{s}`")))?;
        if t == 0 {
            return Err(Error::InvalidBox("limit must be positive".into()));
        }
        match mode.trim() {
            "cube" => Ok(BoxShape::Cube(t)),
            "product" => Ok(BoxShape::Product(t)),
            other => Err(Error::InvalidBox(format!("unknown box mode `{other}`"))),
        }
    }
}

/// Sorted divisors of `n` by trial division.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All pairs `(a, b)` with `a . b = n`, lexicographic in `a`.
///
/// The count is the product of the divisor counts of the coordinates.
pub fn divisor_pairs(n: &MultiIndex) -> Vec<(MultiIndex, MultiIndex)> {
    let lists: Vec<Vec<u64>> = n.entries().iter().map(|&e| divisors(e)).collect();
    let mut out = Vec::with_capacity(lists.iter().map(Vec::len).product());
    for_each_divisor(&lists, |a| {
        let a = MultiIndex(a.to_vec());
        let b = n.div_exact(&a).expect("divisor by construction");
        out.push((a, b));
    });
    out
}

/// Calls `visit` on every element of the cartesian product of `lists`,
/// lexicographically.
pub(crate) fn for_each_divisor(lists: &[Vec<u64>], mut visit: impl FnMut(&[u64])) {
    let k = lists.len();
    let mut pos = vec![0usize; k];
    let mut cur: Vec<u64> = lists.iter().map(|l| l[0]).collect();
    loop {
        visit(&cur);
        let mut j = k;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            pos[j] += 1;
            if pos[j] < lists[j].len() {
                cur[j] = lists[j][pos[j]];
                break;
            }
            pos[j] = 0;
            cur[j] = lists[j][0];
        }
    }
}
