//! Truncated evaluation of multiple Dirichlet series
//! `F(s; f) = Σ f(m) m_1^{-s_1} ... m_k^{-s_k}` with certified error radii,
//! and the identity checks built on it.
//!
//! Truncation is always to the cube `{1..T}^k`. The radius of an
//! [`EvalResult`] covers both the discarded tail (from a [`GrowthBound`]) and
//! floating-point rounding of the partial sum.

mod checks;
mod kernel;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use crate::analysis::{
    in_region_pointwise, partial_zeta, round_down, round_up, zeta_enclosure, GrowthBound, POLE_GUARD,
};
use crate::error::{Error, Result};
use crate::function::{ArithFunction, Builtin, Scalar};
use crate::index::{IndexBox, MultiIndex};

pub use checks::{
    product_identity_check, reciprocal_check, s_prime_membership, star_decomposition_check, sum_identity_check,
    DecompositionReport, IdentityReport, ReciprocalReport, SPrime,
};
pub use kernel::{invert_on_cube, CubeInverse, CubeTable};

/// Per-operation rounding allowance, in units of machine epsilon.
const ULPS_PER_OP: f64 = 4.0;

/// A point `(s_1, ..., s_k)` of `ℂ^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesPoint(Vec<Complex64>);

impl SeriesPoint {
    pub fn new(s: Vec<Complex64>) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidArgument("series point needs at least one coordinate".into()));
        }
        if s.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("series point has a non-finite component".into()));
        }
        Ok(SeriesPoint(s))
    }

    pub fn real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    pub fn conj(&self) -> SeriesPoint {
        SeriesPoint(self.0.iter().map(|z| z.conj()).collect())
    }

    /// `(Re s_1, ..., Re s_k)`.
    pub fn real_part(&self) -> SeriesPoint {
        SeriesPoint(self.0.iter().map(|z| Complex64::new(z.re, 0.0)).collect())
    }
}

/// Parses `"re,im;re,im;..."`.
impl FromStr for SeriesPoint {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut coords = Vec::new();
        for part in text.split(';') {
            let (re, im) = part
                .split_once(',')
                .ok_or_else(|| Error::Format(format!("expected `re,im`, got `{part}`")))?;
            let parse = |x: &str| x.trim().parse::<f64>().map_err(|_| Error::Format(format!("bad number `{x}`")));
            coords.push(Complex64::new(parse(re)?, parse(im)?));
        }
        SeriesPoint::new(coords)
    }
}

impl fmt::Display for SeriesPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|z| format!("{},{}", z.re, z.im)).collect();
        f.write_str(&parts.join(";"))
    }
}

/// Certified truncated value: the series value lies within `tail_radius`
/// of `value`, provided the growth bound holds beyond the cube.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    /// Total radius, `truncation + rounding` rounded up.
    pub tail_radius: f64,
    /// Bound on the discarded tail.
    pub truncation: f64,
    /// Bound on the floating-point error of the partial sum.
    pub rounding: f64,
    pub t: u64,
}

impl EvalResult {
    pub fn contains(&self, z: Complex64) -> bool {
        (self.value - z).norm() <= self.tail_radius
    }
}

/// Read access to the coefficients of a series on a cube.
pub trait Coefficients: Send + Sync {
    fn arity(&self) -> usize;

    /// Whether values are known on all of `{1..t}^k`.
    fn covers_cube(&self, t: u64) -> bool;

    fn at_one(&self) -> Scalar;

    /// Nonzero coefficients with every coordinate `<= t`, in lexicographic order.
    fn for_each_exact(&self, t: u64, visit: &mut dyn FnMut(&[u64], &Scalar));

    /// As [`for_each_exact`](Self::for_each_exact), converted to `f64`; the
    /// flag reports whether the conversion was exact.
    fn for_each_float(&self, t: u64, visit: &mut dyn FnMut(&[u64], f64, bool)) {
        self.for_each_exact(t, &mut |n, v| {
            let x = v.to_f64().unwrap_or(f64::NAN);
            let exact = Scalar::from_float(x).is_some_and(|q| &q == v);
            visit(n, x, exact);
        });
    }

    /// `Some(m)` when every nonzero coefficient on all of `ℕ^k` has
    /// coordinates at most `m`.
    fn support_bound(&self) -> Option<u64> {
        None
    }

    /// Whether every nonzero coefficient on the cube sits on a weak chain
    /// `n_1 <= ... <= n_k`.
    fn weak_chain_supported(&self, t: u64) -> bool {
        let mut ok = true;
        self.for_each_exact(t, &mut |n, _| ok &= n.windows(2).all(|w| w[0] <= w[1]));
        ok
    }
}

impl Coefficients for ArithFunction {
    fn arity(&self) -> usize {
        ArithFunction::arity(self)
    }

    fn covers_cube(&self, t: u64) -> bool {
        IndexBox::cube(self.arity(), t).is_ok_and(|c| c.is_subset_of(self.domain()))
    }

    fn at_one(&self) -> Scalar {
        ArithFunction::at_one(self)
    }

    fn for_each_exact(&self, t: u64, visit: &mut dyn FnMut(&[u64], &Scalar)) {
        for (n, v) in self.support() {
            if n.entries().iter().all(|&e| e <= t) {
                visit(n.entries(), v);
            }
        }
    }
}

/// A built-in indicator at a fixed arity, evaluated lazily.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuiltinSeries {
    kind: Builtin,
    k: usize,
}

impl BuiltinSeries {
    pub fn new(kind: Builtin, k: usize) -> Result<Self> {
        kind.check_arity(k)?;
        Ok(BuiltinSeries { kind, k })
    }

    pub fn kind(&self) -> Builtin {
        self.kind
    }

    fn walk(&self, t: u64, visit: &mut dyn FnMut(&[u64])) {
        let chain = match self.kind {
            Builtin::Star => Chain::Weak,
            Builtin::EulerZagier | Builtin::ApostolVu => Chain::Strict,
            _ => Chain::Free,
        };
        if self.kind == Builtin::Identity {
            visit(&vec![1; self.k]);
            return;
        }
        let mut cur = vec![0u64; self.k];
        walk_cube(&mut cur, 0, t, chain, &mut |n| {
            if self.kind.holds(n) {
                visit(n)
            }
        });
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Chain {
    Free,
    Weak,
    Strict,
}

fn walk_cube(cur: &mut Vec<u64>, pos: usize, t: u64, chain: Chain, visit: &mut dyn FnMut(&[u64])) {
    if pos == cur.len() {
        visit(cur);
        return;
    }
    let start = match (chain, pos) {
        (_, 0) | (Chain::Free, _) => 1,
        (Chain::Weak, _) => cur[pos - 1],
        (Chain::Strict, _) => cur[pos - 1] + 1,
    };
    for v in start..=t {
        cur[pos] = v;
        walk_cube(cur, pos + 1, t, chain, visit);
    }
}

impl Coefficients for BuiltinSeries {
    fn arity(&self) -> usize {
        self.k
    }

    fn covers_cube(&self, _t: u64) -> bool {
        true
    }

    fn at_one(&self) -> Scalar {
        if self.kind.holds(&vec![1; self.k]) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    fn for_each_exact(&self, t: u64, visit: &mut dyn FnMut(&[u64], &Scalar)) {
        let one = Scalar::one();
        self.walk(t, &mut |n| visit(n, &one));
    }

    fn for_each_float(&self, t: u64, visit: &mut dyn FnMut(&[u64], f64, bool)) {
        self.walk(t, &mut |n| visit(n, 1.0, true));
    }

    fn support_bound(&self) -> Option<u64> {
        (self.kind == Builtin::Identity).then_some(1)
    }

    fn weak_chain_supported(&self, _t: u64) -> bool {
        self.k == 1
            || matches!(self.kind, Builtin::Identity | Builtin::Star | Builtin::EulerZagier | Builtin::ApostolVu)
    }
}

/// Partial sum with a bound on its rounding error.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PartialSum {
    pub value: Complex64,
    pub rounding: f64,
}

/// `n^{-s_j}` for `n = 0..=t` (entry 0 unused).
fn power_table(s: Complex64, t: u64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(t as usize + 1);
    out.push(Complex64::zero());
    for n in 1..=t {
        out.push((-s * (n as f64).ln()).exp());
    }
    out
}

fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in values {
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

pub(crate) fn partial_sum(
    f: &dyn Coefficients,
    s: &SeriesPoint,
    t: u64,
    growth: Option<&GrowthBound>,
) -> Result<PartialSum> {
    let k = f.arity();
    if s.arity() != k {
        return Err(Error::ArityMismatch { left: k, right: s.arity() });
    }
    if t == 0 {
        return Err(Error::InvalidArgument("truncation must be at least 1".into()));
    }
    if !f.covers_cube(t) {
        return Err(Error::BoxNotCovered { requested: format!("cube:{t}"), available: "function domain".into() });
    }
    let tables: Vec<Vec<Complex64>> = s.coords().iter().map(|&z| power_table(z, t)).collect();
    let logs: Vec<f64> = (0..=t).map(|n| if n == 0 { 0.0 } else { (n as f64).ln() }).collect();
    let moduli: Vec<f64> = s.coords().iter().map(|z| z.norm()).collect();

    let mut terms: Vec<(u64, Complex64)> = Vec::new();
    let mut weighted_err = 0.0f64;
    let mut abs_total = 0.0f64;
    let mut violation: Option<MultiIndex> = None;
    f.for_each_float(t, &mut |n, c, exact| {
        if violation.is_some() {
            return;
        }
        let is_one = n.iter().all(|&e| e == 1);
        if let Some(b) = growth {
            if !is_one && !(c.abs() <= b.envelope(n)) {
                violation = Some(MultiIndex::new(n.to_vec()).expect("cube index"));
                return;
            }
        }
        let mut term = Complex64::new(c, 0.0);
        let mut ops = if exact { 0.0 } else { 1.0 };
        let mut phase = 0.0;
        for (j, &e) in n.iter().enumerate() {
            if e > 1 {
                term *= tables[j][e as usize];
                ops += ULPS_PER_OP;
                phase += 2.0 * moduli[j] * logs[e as usize];
            }
        }
        let size = term.norm();
        abs_total += size;
        weighted_err += size * (ops + phase);
        terms.push((n.iter().product(), term));
    });
    if let Some(n) = violation {
        return Err(Error::GrowthBoundViolated(n));
    }
    terms.sort_by_key(|&(p, _)| p);
    let re = neumaier(terms.iter().map(|(_, z)| z.re));
    let im = neumaier(terms.iter().map(|(_, z)| z.im));
    let count = terms.len() as f64;
    let summation = if terms.len() > 1 { 2.0 * (2.0 * f64::EPSILON + count * f64::EPSILON * f64::EPSILON) * abs_total } else { 0.0 };
    let rounding = weighted_err * f64::EPSILON + summation;
    Ok(PartialSum { value: Complex64::new(re, im), rounding: if rounding > 0.0 { round_up(rounding) } else { 0.0 } })
}

/// `Σ_{n ∈ {1..T}^k} f(n) ∏ n_j^{-s_j}`, summed in ascending coordinate
/// product with compensated summation.
pub fn eval_truncated(f: &dyn Coefficients, s: &SeriesPoint, t: u64) -> Result<Complex64> {
    Ok(partial_sum(f, s, t, None)?.value)
}

fn bound_arity(b: &GrowthBound, s: &SeriesPoint) -> Result<()> {
    if b.arity() != s.arity() {
        return Err(Error::ArityMismatch { left: b.arity(), right: s.arity() });
    }
    Ok(())
}

/// Bound on `Σ_{n ∉ {1..T}^k} C ∏ n_j^{r_j - σ_j}`, valid when
/// `σ_j > 1 + r_j` for every coordinate:
/// `C (∏ ζ(σ_j - r_j) - ∏ Σ_{n<=T} n^{-(σ_j - r_j)})`, rounded up.
pub fn tail_radius(b: &GrowthBound, s: &SeriesPoint, t: u64) -> Result<f64> {
    bound_arity(b, s)?;
    if !in_region_pointwise(s.coords(), b.r()) {
        return Err(Error::OutOfRegion(format!("Re(s_j) > 1 + r_j fails at s = ({s})")));
    }
    let mut full = 1.0f64;
    let mut partial = 1.0f64;
    for (z, r) in s.coords().iter().zip(b.r()) {
        let a = z.re - r;
        let zeta = zeta_enclosure(a, t).map_err(|_| {
            Error::OutOfRegion(format!("Re(s_j) - r_j = {a} is within {POLE_GUARD} of the pole"))
        })?;
        full = round_up(full * zeta.upper);
        partial = round_down(partial * partial_zeta(a, t).lower);
    }
    Ok(round_up(b.c() * round_up(full - partial).max(0.0)))
}

/// Tail bound for coefficients supported on weak chains `n_1 <= n_2`.
///
/// With `β_j = σ_j - r_j` the sum over the cube complement reduces to
/// `C Σ_{m_2 > T} m_2^{-β_2} S(m_2)` where `S(m) = Σ_{m_1 <= m} m_1^{-β_1}`,
/// which converges when `β_2 > 1` and `β_1 + β_2 > 2`. For `k = 1` this is
/// [`tail_radius`]; larger arities are not supported.
pub fn chain_tail_radius(b: &GrowthBound, s: &SeriesPoint, t: u64) -> Result<f64> {
    bound_arity(b, s)?;
    match s.arity() {
        1 => tail_radius(b, s, t),
        2 => {
            let beta1 = s.coords()[0].re - b.r()[0];
            let beta2 = s.coords()[1].re - b.r()[1];
            if !(beta2 > 1.0 && beta1 + beta2 > 2.0) {
                return Err(Error::OutOfRegion(format!("chain region fails at s = ({s})")));
            }
            let tf = t as f64;
            let tail = if beta1 > 1.0 + POLE_GUARD {
                let inner = zeta_enclosure(beta1, t.max(1000))?.upper;
                round_up(inner * round_up(tf.powf(1.0 - beta2) / (beta2 - 1.0)))
            } else if beta1 >= 1.0 {
                // S(m) <= 1 + ln m
                let d = beta2 - 1.0;
                round_up(tf.powf(1.0 - beta2) * ((1.0 + tf.ln()) / d + 1.0 / (d * d)))
            } else {
                // S(m) <= c m^{1 - β_1}
                let c = if beta1 >= 0.0 { 1.0 / (1.0 - beta1) } else { 1.0 };
                let e = beta1 + beta2 - 2.0;
                round_up(c * round_up(tf.powf(-e) / e))
            };
            Ok(round_up(b.c() * tail))
        }
        k => Err(Error::OutOfRegion(format!("chain tail bound is implemented for k <= 2, got k = {k}"))),
    }
}

/// Partial sum plus certified radius.
///
/// The growth bound is checked on every visited coefficient. The tail uses
/// the coordinatewise bound where `σ_j > 1 + r_j`, and the chain bound for
/// weak-chain-supported coefficients at `k = 2`; the smaller one wins.
/// Coefficients with known finite support inside the cube have no tail.
pub fn eval_certified(f: &dyn Coefficients, b: &GrowthBound, s: &SeriesPoint, t: u64) -> Result<EvalResult> {
    bound_arity(b, s)?;
    let partial = partial_sum(f, s, t, Some(b))?;
    let truncation = if f.support_bound().is_some_and(|m| m <= t) {
        0.0
    } else {
        let pointwise = tail_radius(b, s, t);
        let chain = if f.weak_chain_supported(t) { chain_tail_radius(b, s, t).ok() } else { None };
        match (pointwise, chain) {
            (Ok(p), Some(c)) => p.min(c),
            (Ok(p), None) => p,
            (Err(_), Some(c)) => c,
            (Err(e), None) => return Err(e),
        }
    };
    let total = truncation + partial.rounding;
    Ok(EvalResult {
        value: partial.value,
        tail_radius: if total > 0.0 { round_up(total) } else { 0.0 },
        truncation,
        rounding: partial.rounding,
        t,
    })
}
