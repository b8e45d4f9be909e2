//! Growth bounds `|f(n)| <= C n_1^{r_1} ... n_k^{r_k}` and the induced bound
//! on the inverse of a unit.
//!
//! If `f` satisfies a growth bound and `α_j > 1 + r_j` with
//! `∏ ζ(α_j - r_j) <= 1 + |f(1)|/C`, then
//! `|f⁻¹(n)| <= n_1^{α_1} ... n_k^{α_k} / |f(1)|` for every `n`.

use num_traits::Signed;

use super::zeta::{round_up, zeta_enclosure, POLE_GUARD, ZETA_TERMS};
use crate::error::{Error, Result};
use crate::function::{ArithFunction, Scalar};
use crate::index::{IndexBox, MultiIndex};
use crate::ring::invert;

/// Certificate `|f(n)| <= C ∏ n_j^{r_j}` for `n != (1,...,1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthBound {
    c: f64,
    r: Vec<f64>,
}

impl GrowthBound {
    pub fn new(c: f64, r: Vec<f64>) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidArgument(format!("growth constant must be positive, got {c}")));
        }
        if r.is_empty() || r.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("growth exponents must be finite and nonempty".into()));
        }
        Ok(GrowthBound { c, r })
    }

    /// `C` with all exponents zero.
    pub fn bounded(c: f64, k: usize) -> Result<Self> {
        Self::new(c, vec![0.0; k])
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn arity(&self) -> usize {
        self.r.len()
    }

    /// Upward-rounded `C ∏ n_j^{r_j}`.
    pub fn envelope(&self, n: &[u64]) -> f64 {
        let mut v = self.c;
        for (&e, &r) in n.iter().zip(&self.r) {
            v = round_up(v * (e as f64).powf(r));
        }
        v
    }
}

/// Exponents `α_j` for the inverse bound.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaVector(pub Vec<f64>);

impl AlphaVector {
    pub fn uniform(a: f64, k: usize) -> Self {
        AlphaVector(vec![a; k])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// `α_l + α_{l+1} + ... + α_k` with 1-based `l`.
    pub fn tail_sum(&self, l: usize) -> f64 {
        self.0[l - 1..].iter().sum()
    }
}

fn exceeds(value: &Scalar, bound: f64) -> bool {
    match Scalar::from_float(bound) {
        Some(b) => value.abs() > b,
        None => bound.is_nan() || bound < 0.0,
    }
}

/// First index `n != 1` of the box where the bound fails.
pub fn growth_violation(f: &ArithFunction, b: &GrowthBound) -> Option<MultiIndex> {
    if b.arity() != f.arity() {
        return Some(MultiIndex::one(f.arity()));
    }
    f.support()
        .filter(|(n, _)| !n.is_one())
        .find(|(n, v)| exceeds(v, b.envelope(n.entries())))
        .map(|(n, _)| n.clone())
}

/// Checks the growth bound at every index of `f`'s box except `(1,...,1)`.
/// The left side is exact, the right side rounded up.
pub fn verify_growth_bound(f: &ArithFunction, b: &GrowthBound) -> bool {
    growth_violation(f, b).is_none()
}

/// Parameters of the uniform-offset search in [`find_alpha`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaSearch {
    /// Grid spacing for the offset `t = α_j - r_j`.
    pub grid: f64,
    /// Offsets `t <= 1 + pole_guard` are never evaluated.
    pub pole_guard: f64,
    pub t_max: f64,
    pub zeta_terms: u64,
}

impl Default for AlphaSearch {
    fn default() -> Self {
        AlphaSearch { grid: 1e-6, pole_guard: POLE_GUARD, t_max: 64.0, zeta_terms: ZETA_TERMS }
    }
}

/// Result of [`find_alpha`].
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaFit {
    pub alpha: AlphaVector,
    /// Common offset `t = α_j - r_j`.
    pub offset: f64,
    /// Certified upper bound for `∏ ζ(α_j - r_j)`.
    pub product_upper: f64,
    /// `1 + |f(1)|/C`.
    pub threshold: f64,
}

/// Upward-rounded `ζ(t)^k` from certified enclosures.
pub(crate) fn zeta_power_upper(t: f64, k: usize, terms: u64) -> Result<f64> {
    let z = zeta_enclosure(t, terms)?.upper;
    Ok((0..k).fold(1.0, |acc, _| round_up(acc * z)))
}

/// Exact test of `product <= 1 + f1_abs / C`.
fn within_threshold(product: f64, f1_abs: f64, c: f64) -> bool {
    let (Some(p), Some(f1), Some(c)) = (Scalar::from_float(product), Scalar::from_float(f1_abs), Scalar::from_float(c))
    else {
        return false;
    };
    p <= Scalar::from_integer(1.into()) + f1 / c
}

/// Smallest grid offset `t` with certified `ζ(t)^k <= 1 + |f(1)|/C`,
/// found by bisection; returns `α_j = r_j + t`.
pub fn find_alpha(b: &GrowthBound, f1_abs: f64, search: &AlphaSearch) -> Result<AlphaFit> {
    if !(f1_abs.is_finite() && f1_abs > 0.0) {
        return Err(Error::InvalidArgument(format!("|f(1)| must be positive, got {f1_abs}")));
    }
    if !(search.grid > 0.0 && search.t_max > 1.0 + search.pole_guard) {
        return Err(Error::InvalidArgument("degenerate alpha search parameters".into()));
    }
    let k = b.arity();
    let threshold = 1.0 + f1_abs / b.c();
    let offset_at = |i: u64| 1.0 + i as f64 * search.grid;
    let passes = |i: u64| -> Result<Option<f64>> {
        let p = zeta_power_upper(offset_at(i), k, search.zeta_terms)?;
        Ok(within_threshold(p, f1_abs, b.c()).then_some(p))
    };

    let mut hi = ((search.t_max - 1.0) / search.grid).floor() as u64;
    let Some(mut best) = passes(hi)? else {
        return Err(Error::Unsatisfiable { t_max: search.t_max, threshold });
    };
    let mut lo = (search.pole_guard / search.grid).floor() as u64;
    while offset_at(lo) <= 1.0 + search.pole_guard {
        lo += 1;
    }
    if let Some(p) = passes(lo)? {
        hi = lo;
        best = p;
    } else {
        // invariant: lo fails, hi passes
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            match passes(mid)? {
                Some(p) => {
                    hi = mid;
                    best = p;
                }
                None => lo = mid,
            }
        }
    }
    let t = offset_at(hi);
    Ok(AlphaFit {
        alpha: AlphaVector(b.r().iter().map(|r| r + t).collect()),
        offset: t,
        product_upper: best,
        threshold,
    })
}

/// First index where `|f⁻¹(n)| · |f(1)| > ∏ n_j^{α_j}`.
pub fn inverse_bound_violation(f: &ArithFunction, alpha: &AlphaVector, domain: &IndexBox) -> Result<Option<MultiIndex>> {
    if alpha.arity() != f.arity() {
        return Err(Error::ArityMismatch { left: f.arity(), right: alpha.arity() });
    }
    let inv = invert(f, domain)?;
    let f1 = f.at_one().abs();
    let envelope = GrowthBound { c: 1.0, r: alpha.0.clone() };
    let found = inv.support().find(|(n, v)| exceeds(&(*v * &f1), envelope.envelope(n.entries()))).map(|(n, _)| n.clone());
    Ok(found)
}

/// Computes `f⁻¹` on the box and checks `|f⁻¹(n)| <= ∏ n_j^{α_j} / |f(1)|`
/// at every index, exactly on the left and rounded up on the right.
pub fn inverse_bound_check(f: &ArithFunction, alpha: &AlphaVector, domain: &IndexBox) -> Result<bool> {
    Ok(inverse_bound_violation(f, alpha, domain)?.is_none())
}
