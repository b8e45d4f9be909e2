//! Identity checks on certified evaluations.

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{eval_certified, invert_on_cube, partial_sum, BuiltinSeries, Coefficients, EvalResult, SeriesPoint};
use crate::analysis::{
    growth_violation, in_region_abs_ez, in_region_zfr, in_region_zfr2, partial_zeta, round_down, round_up,
    zeta_enclosure, AlphaVector, GrowthBound, ZETA_TERMS,
};
use crate::error::{Error, Result};
use crate::function::{ArithFunction, Builtin, Scalar};
use crate::index::IndexBox;
use crate::ring::{add, convolve};

/// Smallest `f64` that is at least `q`.
fn f64_at_least(q: &Scalar) -> f64 {
    let mut x = q.to_f64().unwrap_or(f64::INFINITY);
    while Scalar::from_float(x).is_some_and(|y| &y < q) {
        x = x.next_up();
    }
    x
}

fn sum_radius(parts: &[f64]) -> f64 {
    round_up(parts.iter().fold(0.0, |acc, &x| round_up(acc + x)))
}

/// Which zero-free region admitted the point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReciprocalRegion {
    Zfr,
    Zfr2,
}

#[derive(Clone, Debug)]
pub struct ReciprocalReport {
    pub value_f: EvalResult,
    pub value_finv: EvalResult,
    pub product: Complex64,
    /// `|product - 1|`.
    pub deviation: f64,
    pub combined_radius: f64,
    pub region: ReciprocalRegion,
    pub pass: bool,
}

/// Checks `F(s; f) F(s; f⁻¹) = 1` on the cube `{1..T}^k`.
///
/// The inverse is evaluated with the bound `|f⁻¹(n)| <= ∏ n_j^{α_j} / |f(1)|`,
/// which requires `α` to satisfy `α_j > 1 + r_j` and
/// `∏ ζ(α_j - r_j) <= 1 + |f(1)|/C`; both are re-checked here. The point
/// must satisfy `Re s_j > 1 + α_j`, or the tail-sum version of that
/// condition when `f` is supported on weak chains.
pub fn reciprocal_check(
    f: &dyn Coefficients,
    b_f: &GrowthBound,
    alpha: &AlphaVector,
    s: &SeriesPoint,
    t: u64,
) -> Result<ReciprocalReport> {
    let k = f.arity();
    for other in [b_f.arity(), alpha.arity(), s.arity()] {
        if other != k {
            return Err(Error::ArityMismatch { left: k, right: other });
        }
    }
    let f1 = f.at_one();
    if f1.is_zero() {
        return Err(Error::NotAUnit);
    }
    let region = if in_region_zfr(s.coords(), alpha) {
        ReciprocalRegion::Zfr
    } else if in_region_zfr2(s.coords(), alpha) && f.weak_chain_supported(t) {
        ReciprocalRegion::Zfr2
    } else {
        return Err(Error::OutOfRegion(format!("s = ({s}) is outside the zero-free region for the given alpha")));
    };

    let f1_abs = f1.abs();
    let mut product = 1.0f64;
    for (a, r) in alpha.values().iter().zip(b_f.r()) {
        let z = zeta_enclosure(a - r, ZETA_TERMS)
            .map_err(|_| Error::InvalidArgument(format!("alpha {a} does not exceed 1 + r = {}", 1.0 + r)))?;
        product = round_up(product * z.upper);
    }
    let c = Scalar::from_float(b_f.c()).expect("growth constant is finite");
    let certified = Scalar::from_float(product).is_some_and(|p| p <= Scalar::one() + &f1_abs / c);
    if !certified {
        return Err(Error::InvalidArgument(format!(
            "alpha is not certified: zeta product {product} exceeds 1 + |f(1)|/C"
        )));
    }

    let inverse = invert_on_cube(f, t)?;
    let b_inv = GrowthBound::new(f64_at_least(&(Scalar::one() / &f1_abs)), alpha.values().to_vec())?;
    let value_f = eval_certified(f, b_f, s, t)?;
    let value_finv = eval_certified(&inverse, &b_inv, s, t)?;

    let (a, b) = (value_f.value, value_finv.value);
    let (ra, rb) = (value_f.tail_radius, value_finv.tail_radius);
    let product = a * b;
    let deviation = (product - 1.0).norm();
    let arithmetic = round_up(4.0 * f64::EPSILON * (a.norm() * b.norm() + 1.0));
    let combined_radius = sum_radius(&[a.norm() * rb, b.norm() * ra, ra * rb, arithmetic]);
    Ok(ReciprocalReport {
        value_f,
        value_finv,
        product,
        deviation,
        combined_radius,
        region,
        pass: deviation <= combined_radius,
    })
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub lhs: EvalResult,
    pub ez: EvalResult,
    pub diagonal: EvalResult,
    pub rhs: Complex64,
    pub delta: f64,
    pub slack: f64,
    pub pass: bool,
}

/// Compares `ζ*_2(s_1, s_2)` with `ζ_EZ,2(s_1, s_2) + ζ(s_1 + s_2)`.
///
/// Both double sums are cut at the cube `{1..T}^2` and the diagonal at
/// `n <= T²`; the slack is the sum of the three certified radii.
pub fn star_decomposition_check(s: &SeriesPoint, t: u64) -> Result<DecompositionReport> {
    if s.arity() != 2 {
        return Err(Error::ArityMismatch { left: 2, right: s.arity() });
    }
    if !in_region_abs_ez(s.coords()) {
        return Err(Error::OutOfRegion(format!("s = ({s}) is outside the absolute convergence region")));
    }
    let b2 = GrowthBound::bounded(1.0, 2)?;
    let lhs = eval_certified(&BuiltinSeries::new(Builtin::Star, 2)?, &b2, s, t)?;
    let ez = eval_certified(&BuiltinSeries::new(Builtin::EulerZagier, 2)?, &b2, s, t)?;
    let diag_point = SeriesPoint::new(vec![s.coords()[0] + s.coords()[1]])?;
    let t_sq = t.checked_mul(t).ok_or_else(|| Error::InvalidArgument(format!("T = {t} is too large")))?;
    let diagonal =
        eval_certified(&BuiltinSeries::new(Builtin::Ones, 1)?, &GrowthBound::bounded(1.0, 1)?, &diag_point, t_sq)?;
    let rhs = ez.value + diagonal.value;
    let delta = (lhs.value - rhs).norm();
    let arithmetic = round_up(4.0 * f64::EPSILON * (lhs.value.norm() + rhs.norm()));
    let slack = sum_radius(&[lhs.tail_radius, ez.tail_radius, diagonal.tail_radius, arithmetic]);
    Ok(DecompositionReport { lhs, ez, diagonal, rhs, delta, slack, pass: delta <= slack })
}

/// Position of a point relative to the set where `ζ*_k(Re s) < 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SPrime {
    Inside,
    Outside,
    Uncertain,
}

/// Certified comparison of `ζ*_k(Re s_1, ..., Re s_k)` against 2.
pub fn s_prime_membership(s: &SeriesPoint, t: u64) -> Result<SPrime> {
    let real = s.real_part();
    if !in_region_abs_ez(real.coords()) {
        return Err(Error::OutOfRegion(format!("Re s = ({real}) is outside the absolute convergence region")));
    }
    let k = s.arity();
    let r = eval_certified(&BuiltinSeries::new(Builtin::Star, k)?, &GrowthBound::bounded(1.0, k)?, &real, t)?;
    let upper = round_up(r.value.re + r.tail_radius);
    let lower = round_down(r.value.re - r.tail_radius);
    Ok(if upper < 2.0 {
        SPrime::Inside
    } else if lower >= 2.0 {
        SPrime::Outside
    } else {
        SPrime::Uncertain
    })
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub delta: f64,
    pub slack: f64,
    pub pass: bool,
}

fn cube_of(f: &ArithFunction, t: u64) -> Result<IndexBox> {
    let cube = IndexBox::cube(f.arity(), t)?;
    if !cube.is_subset_of(f.domain()) {
        return Err(Error::BoxNotCovered { requested: cube.to_string(), available: f.domain().to_string() });
    }
    Ok(cube)
}

fn checked_bound(f: &ArithFunction, b: &GrowthBound) -> Result<()> {
    if b.arity() != f.arity() {
        return Err(Error::ArityMismatch { left: f.arity(), right: b.arity() });
    }
    match growth_violation(f, b) {
        Some(n) => Err(Error::GrowthBoundViolated(n)),
        None => Ok(()),
    }
}

/// `F_T(f) + F_T(g)` against `F_T(f + g)`, within rounding radii.
pub fn sum_identity_check(f: &ArithFunction, g: &ArithFunction, s: &SeriesPoint, t: u64) -> Result<IdentityReport> {
    let cube = cube_of(f, t)?;
    cube_of(g, t)?;
    let h = add(&f.restrict(&cube)?, &g.restrict(&cube)?)?;
    let (pf, pg, ph) = (partial_sum(f, s, t, None)?, partial_sum(g, s, t, None)?, partial_sum(&h, s, t, None)?);
    let lhs = pf.value + pg.value;
    let delta = (lhs - ph.value).norm();
    let arithmetic = round_up(4.0 * f64::EPSILON * (lhs.norm() + ph.value.norm()));
    let slack = sum_radius(&[pf.rounding, pg.rounding, ph.rounding, arithmetic]);
    Ok(IdentityReport { lhs, rhs: ph.value, delta, slack, pass: delta <= slack })
}

/// `F_T(f) F_T(g)` against `F_T(f * g)` on the cube `{1..T}^k`.
///
/// The difference is exactly the sum of `f(a) g(b) (ab)^{-s}` over pairs in
/// the cube whose product leaves it. With `|f(n)| <= C'_f ∏ n_j^{r_j}` for
/// all `n` (`C' = max(C, |f(1)|)`) it is bounded by
/// `C'_f C'_g (∏_j A_j - ∏_j B_j)`, where `A_j = Σ_{a,b<=T}` and
/// `B_j = Σ_{ab<=T}` of `a^{r_fj - σ_j} b^{r_gj - σ_j}`.
pub fn product_identity_check(
    f: &ArithFunction,
    g: &ArithFunction,
    bf: &GrowthBound,
    bg: &GrowthBound,
    s: &SeriesPoint,
    t: u64,
) -> Result<IdentityReport> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch { left: f.arity(), right: g.arity() });
    }
    let cube = cube_of(f, t)?;
    cube_of(g, t)?;
    checked_bound(f, bf)?;
    checked_bound(g, bg)?;
    let h = convolve(f, g, &cube)?;
    let (pf, pg, ph) = (partial_sum(f, s, t, None)?, partial_sum(g, s, t, None)?, partial_sum(&h, s, t, None)?);

    let mut outer = 1.0f64;
    let mut inner = 1.0f64;
    for (j, z) in s.coords().iter().enumerate() {
        let ef = z.re - bf.r()[j];
        let eg = z.re - bg.r()[j];
        outer = round_up(outer * round_up(partial_zeta(ef, t).upper * partial_zeta(eg, t).upper));
        let mut terms = Vec::new();
        for a in 1..=t {
            let fa = (a as f64).powf(-ef);
            for b in 1..=t / a {
                terms.push(fa * (b as f64).powf(-eg));
            }
        }
        let exact = crate::analysis::zeta::compensated_sum(terms.iter().copied());
        let slack = (2.0 * f64::EPSILON + terms.len() as f64 * f64::EPSILON * f64::EPSILON) * terms.iter().sum::<f64>()
            + 4.0 * f64::EPSILON * exact;
        inner = round_down(inner * round_down(exact - slack));
    }
    let cf = f64_at_least(&Scalar::from_float(bf.c()).expect("finite").max(f.at_one().abs()));
    let cg = f64_at_least(&Scalar::from_float(bg.c()).expect("finite").max(g.at_one().abs()));
    let cross = round_up(round_up(cf * cg) * round_up(outer - inner).max(0.0));

    let lhs = pf.value * pg.value;
    let delta = (lhs - ph.value).norm();
    let (af, ag) = (pf.value.norm(), pg.value.norm());
    let arithmetic = round_up(4.0 * f64::EPSILON * (af * ag + ph.value.norm()));
    let slack = sum_radius(&[cross, af * pg.rounding, ag * pf.rounding, pf.rounding * pg.rounding, ph.rounding, arithmetic]);
    Ok(IdentityReport { lhs, rhs: ph.value, delta, slack, pass: delta <= slack })
}
