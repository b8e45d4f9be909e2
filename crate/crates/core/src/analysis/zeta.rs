use crate::error::{Error, Result};
use crate::index::divisors;

/// Arguments `a <= 1 + POLE_GUARD` are rejected by [`zeta_enclosure`].
pub const POLE_GUARD: f64 = 1e-6;

/// Relative widening applied before stepping one ulp outward.
///
/// Every quantity that must be rounded in a fixed direction is a short chain
/// of IEEE operations (`powf`, `exp`, products, compensated sums) whose
/// relative error stays below a few dozen ulps.
pub const ROUNDING_SLACK: f64 = 64.0 * f64::EPSILON;

/// Default number of explicit terms in zeta enclosures.
pub const ZETA_TERMS: u64 = 10_000;

pub fn round_up(x: f64) -> f64 {
    (x + x.abs() * ROUNDING_SLACK).next_up()
}

pub fn round_down(x: f64) -> f64 {
    (x - x.abs() * ROUNDING_SLACK).next_down()
}

/// A closed real interval known to contain some target value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Enclosure {
    pub lower: f64,
    pub upper: f64,
}

impl Enclosure {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Enclosure of `Σ_{n<=terms} n^{-a}` (any real `a`).
pub fn partial_zeta(a: f64, terms: u64) -> Enclosure {
    let s = compensated_sum((1..=terms).rev().map(|n| (n as f64).powf(-a)));
    // the first term is exactly 1 and the rest are positive
    let floor = if terms >= 1 { 1.0 } else { 0.0 };
    Enclosure { lower: round_down(s).max(floor), upper: round_up(s) }
}

/// Certified enclosure of `ζ(a)` for real `a > 1`: the partial sum up to
/// `terms` below, plus the integral tail above. Convexity of `x^{-a}` gives
/// `n^{-a} <= ∫_{n-1/2}^{n+1/2} x^{-a} dx`, so the tail is at most
/// `(T + 1/2)^{1-a}/(a-1)`, slightly below the plain `T^{1-a}/(a-1)`.
pub fn zeta_enclosure(a: f64, terms: u64) -> Result<Enclosure> {
    if a.is_nan() || a <= 1.0 + POLE_GUARD {
        return Err(Error::PoleGuard(a));
    }
    if terms == 0 {
        return Err(Error::InvalidArgument("zeta enclosure needs at least one term".into()));
    }
    let partial = partial_zeta(a, terms);
    let tail = round_up((terms as f64 + 0.5).powf(1.0 - a) / (a - 1.0));
    Ok(Enclosure { lower: partial.lower, upper: round_up(partial.upper + tail) })
}

/// Upper bound for `ζ(a)` with [`ZETA_TERMS`] explicit terms.
pub fn zeta_upper(a: f64) -> Result<f64> {
    Ok(zeta_enclosure(a, ZETA_TERMS)?.upper)
}

/// `Σ_{d|n} d^a`.
pub fn divisor_power_sum(n: u64, a: f64) -> f64 {
    compensated_sum(divisors(n).into_iter().map(|d| (d as f64).powf(a)))
}
