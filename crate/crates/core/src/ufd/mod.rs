//! Ring structure of `Ω_k`: norm, units, box-local divisibility and
//! equivalence certificates, norm-based prime certificates, the support
//! subrings `Ω*`, `Ω_EZ`, `Ω_MT`, `Ω_AV`, and the prime-position encoding
//! into power series (see [`encoding`]).
//!
//! Divisibility in `Ω_k` is a statement about functions on all of `ℕ^k`.
//! On a box we can only solve the equations indexed by the box. Those
//! equations are necessary, so [`Divisibility::Inconsistent`] disproves global
//! divisibility, while [`Divisibility::SolvableOnBox`] is only a necessary
//! condition.

pub mod encoding;
mod linsolve;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::function::ArithFunction;
use crate::index::{IndexBox, MultiIndex};
use crate::numtheory::is_prime;
use crate::ring::{convolve, divisor_table, for_each_factorization, invert};

use linsolve::{Echelon, Row};

/// `N(f)` as seen from a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Norm {
    /// Minimum coordinate product over the support on the box, or 0 for a
    /// function that vanishes on the box.
    pub value: u64,
    /// Set when indices outside the box could still carry a smaller product,
    /// so `value` is not the global norm.
    pub box_limited: bool,
}

/// Largest `P` such that every index with product `<= P` lies in the box.
fn complete_product_level(domain: &IndexBox) -> u64 {
    match (domain.cube_limit(), domain.product_limit()) {
        (Some(c), Some(p)) => c.min(p),
        (Some(c), None) => c,
        (None, Some(p)) => p,
        (None, None) => unreachable!("box without limits"),
    }
}

/// `N(f) = min { n_1 ... n_k : f(n) != 0 }`, or 0 for the zero function.
pub fn norm(f: &ArithFunction) -> Norm {
    match f.support().map(|(n, _)| n.product()).min() {
        None => Norm { value: 0, box_limited: true },
        Some(m) => Norm { value: m, box_limited: m - 1 > complete_product_level(f.domain()) },
    }
}

/// `f(1,...,1) != 0`.
pub fn is_unit(f: &ArithFunction) -> bool {
    f.is_unit()
}

/// `h = f⁻¹ * g`, the unique solution of `f * h = g`, for a unit `f`.
pub fn divide_by_unit(g: &ArithFunction, f: &ArithFunction, domain: &IndexBox) -> Result<ArithFunction> {
    let inv = invert(f, domain)?;
    convolve(&inv, g, domain)
}

/// Outcome of solving `g = f * h` on a box.
#[derive(Clone, Debug, PartialEq)]
pub enum Divisibility {
    /// The box equations have a solution; free unknowns are set to zero.
    SolvableOnBox(ArithFunction),
    /// The box equations have no solution, so `f` does not divide `g`.
    Inconsistent,
}

impl Divisibility {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Divisibility::SolvableOnBox(_))
    }

    pub fn witness(&self) -> Option<&ArithFunction> {
        match self {
            Divisibility::SolvableOnBox(h) => Some(h),
            Divisibility::Inconsistent => None,
        }
    }
}

/// Solves `g(n) = Σ_{a·b=n} f(a) h(b)` for all `n` in the box, with unknowns
/// `h(b)` for `b` in the box.
pub fn divides_on_box(f: &ArithFunction, g: &ArithFunction, domain: &IndexBox) -> Result<Divisibility> {
    for h in [f, g] {
        if h.arity() != domain.arity() {
            return Err(Error::ArityMismatch { left: domain.arity(), right: h.arity() });
        }
        if !domain.is_subset_of(h.domain()) {
            return Err(Error::BoxNotCovered { requested: domain.to_string(), available: h.domain().to_string() });
        }
    }
    let unknowns = domain.indices();
    let column: HashMap<&MultiIndex, usize> = unknowns.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let table = divisor_table(domain.max_coordinate());

    let mut system = Echelon::default();
    for n in &unknowns {
        let mut row = Row { rhs: g.get(n), ..Row::default() };
        for_each_factorization(&table, n, |a, b| {
            if let Some(x) = f.value(a) {
                row.coeffs.insert(column[b], x.clone());
            }
        });
        if !system.push(row) {
            return Ok(Divisibility::Inconsistent);
        }
    }
    let solution = system.solve(unknowns.len());
    let h = ArithFunction::from_entries(*domain, unknowns.into_iter().zip(solution))?;
    Ok(Divisibility::SolvableOnBox(h))
}

/// Box-local equivalence `f ∼ g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equivalence {
    pub equivalent: bool,
    /// A unit `ε` with `f = ε * g` on the box, when one was found.
    pub witness: Option<ArithFunction>,
}

/// `f ∼ g` on the box: mutual divisibility of the box equations.
///
/// For two units the answer is always yes, with `ε = f * g⁻¹`.
pub fn equivalent_on_box(f: &ArithFunction, g: &ArithFunction, domain: &IndexBox) -> Result<Equivalence> {
    if f.is_unit() && g.is_unit() {
        let eps = convolve(f, &invert(g, domain)?, domain)?;
        return Ok(Equivalence { equivalent: true, witness: Some(eps) });
    }
    let g_divides_f = divides_on_box(g, f, domain)?;
    let f_divides_g = divides_on_box(f, g, domain)?;
    let equivalent = g_divides_f.is_solvable() && f_divides_g.is_solvable();
    let witness = match g_divides_f {
        Divisibility::SolvableOnBox(h) if equivalent && h.is_unit() => Some(h),
        _ => None,
    };
    Ok(Equivalence { equivalent, witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeCertificate {
    /// The norm is a rational prime, hence `f` is prime in `Ω_k`.
    CertifiedPrime,
    /// The norm criterion does not apply; `f` may or may not be prime.
    Unknown,
}

/// Primality of `f` via the sufficient criterion "`N(f)` is a prime number".
pub fn norm_prime_certificate(f: &ArithFunction) -> Result<PrimeCertificate> {
    if f.is_zero() {
        return Err(Error::PrimalityUndefined("function is zero on its box"));
    }
    if f.is_unit() {
        return Err(Error::PrimalityUndefined("function is a unit"));
    }
    let n = norm(f);
    if !n.box_limited && is_prime(n.value) {
        Ok(PrimeCertificate::CertifiedPrime)
    } else {
        Ok(PrimeCertificate::Unknown)
    }
}

/// Support-defined subrings of `Ω_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subring {
    /// `f(n) = 0` unless `n_1 <= ... <= n_k`.
    Star,
    /// `f(n) = 0` unless `n_1 < ... < n_k`.
    EulerZagier,
    /// `f(n) = 0` whenever `n_k < n_1 + ... + n_{k-1}`.
    MordellTornheim,
    /// `Ω_EZ ∩ Ω_MT`.
    ApostolVu,
}

impl Subring {
    pub const ALL: [Subring; 4] = [Subring::Star, Subring::EulerZagier, Subring::MordellTornheim, Subring::ApostolVu];

    /// Whether a nonzero value at `n` is allowed.
    pub fn admits(self, n: &[u64]) -> bool {
        match self {
            Subring::Star => n.windows(2).all(|w| w[0] <= w[1]),
            Subring::EulerZagier => n.windows(2).all(|w| w[0] < w[1]),
            Subring::MordellTornheim => {
                let (last, head) = n.split_last().expect("nonempty index");
                *last >= head.iter().sum::<u64>()
            }
            Subring::ApostolVu => Subring::EulerZagier.admits(n) && Subring::MordellTornheim.admits(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Subring::Star => "star",
            Subring::EulerZagier => "EZ",
            Subring::MordellTornheim => "MT",
            Subring::ApostolVu => "AV",
        }
    }
}

impl FromStr for Subring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Subring::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown subring `{s}`")))
    }
}

impl fmt::Display for Subring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Support condition checked at every stored index of the box.
pub fn subring_membership(f: &ArithFunction, which: Subring) -> bool {
    f.support().all(|(n, _)| which.admits(n.entries()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{builtin, Scalar};
    use crate::ring::add;

    fn mi(v: &[u64]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    fn int(v: i64) -> Scalar {
        Scalar::from_integer(v.into())
    }

    fn indicator(domain: IndexBox, at: &[u64]) -> ArithFunction {
        ArithFunction::from_entries(domain, [(mi(at), int(1))]).unwrap()
    }

    #[test]
    fn norms() {
        let b = IndexBox::product(2, 20).unwrap();
        assert_eq!(norm(&builtin("identity_I", b).unwrap()), Norm { value: 1, box_limited: false });
        let f = ArithFunction::from_entries(b, [(mi(&[2, 1]), int(5)), (mi(&[1, 3]), int(7))]).unwrap();
        assert_eq!(norm(&f).value, 2);
        let z = norm(&ArithFunction::zero(b));
        assert_eq!(z.value, 0);
        assert!(z.box_limited);
    }

    #[test]
    fn cube_norm_can_be_box_limited() {
        let b = IndexBox::cube(2, 3).unwrap();
        // products 1..=3 are fully inside the cube; 9 is not certified (4 = (4,1) is outside)
        assert!(!norm(&indicator(b, &[1, 3])).box_limited);
        assert!(!norm(&indicator(b, &[2, 2])).box_limited);
        assert!(norm(&indicator(b, &[3, 3])).box_limited);
    }

    #[test]
    fn units() {
        let b = IndexBox::cube(2, 5).unwrap();
        assert!(is_unit(&builtin("identity_I", b).unwrap()));
        assert!(!is_unit(&builtin("u_EZ", b).unwrap()));
        assert!(is_unit(&builtin("u_star", b).unwrap()));
    }

    #[test]
    fn divide_by_identity_and_star() {
        let b = IndexBox::product(2, 24).unwrap();
        let star = builtin("u_star", b).unwrap();
        let id = builtin("identity_I", b).unwrap();
        assert_eq!(divide_by_unit(&star, &id, &b).unwrap(), star);
        let sq = convolve(&star, &star, &b).unwrap();
        assert_eq!(divide_by_unit(&sq, &star, &b).unwrap(), star);
    }

    #[test]
    fn star_over_ez_plus_one() {
        let b = IndexBox::cube(2, 10).unwrap();
        let star = builtin("u_star", b).unwrap();
        let ez1 = add(&builtin("u_EZ", b).unwrap(), &builtin("identity_I", b).unwrap()).unwrap();
        let h = divide_by_unit(&star, &ez1, &b).unwrap();
        // oracle: (u_EZ + I) * h reproduces u_star
        assert_eq!(convolve(&ez1, &h, &b).unwrap(), star);
        // u* = u_EZ + diag holds additively; the quotient is the diagonal
        // indicator only on the diagonal itself
        for n in b.indices() {
            let e = n.entries();
            if e[0] == e[1] {
                assert_eq!(h.get(&n), int(1));
            }
        }
        assert_eq!(h.get(&MultiIndex::new(vec![2, 4]).unwrap()), int(-1));
    }

    #[test]
    fn divides_trivial_cases() {
        let b = IndexBox::product(2, 12).unwrap();
        let g = builtin("u_star", b).unwrap();
        let id = builtin("identity_I", b).unwrap();
        assert_eq!(divides_on_box(&id, &g, &b).unwrap(), Divisibility::SolvableOnBox(g.clone()));
        let two_id = crate::ring::scale(&int(2), &id);
        let r = divides_on_box(&two_id, &id, &b).unwrap();
        assert_eq!(r.witness().unwrap().get(&mi(&[1, 1])), Scalar::new(1.into(), 2.into()));
    }

    #[test]
    fn divides_indicators_k1() {
        let b = IndexBox::cube(1, 12).unwrap();
        let two = indicator(b, &[2]);
        let four = indicator(b, &[4]);
        let three = indicator(b, &[3]);
        assert_eq!(divides_on_box(&two, &four, &b).unwrap(), Divisibility::SolvableOnBox(two.clone()));
        assert_eq!(divides_on_box(&two, &three, &b).unwrap(), Divisibility::Inconsistent);
    }

    #[test]
    fn equivalence_cases() {
        let b = IndexBox::cube(1, 12).unwrap();
        let two = indicator(b, &[2]);
        let three = indicator(b, &[3]);
        let refl = equivalent_on_box(&two, &two, &b).unwrap();
        assert!(refl.equivalent);
        assert_eq!(refl.witness, Some(builtin("identity_I", b).unwrap()));
        assert!(!equivalent_on_box(&two, &three, &b).unwrap().equivalent);

        let b2 = IndexBox::product(2, 20).unwrap();
        let star = builtin("u_star", b2).unwrap();
        let ones = builtin("ones", b2).unwrap();
        let e = equivalent_on_box(&star, &ones, &b2).unwrap();
        assert!(e.equivalent);
        let eps = e.witness.unwrap();
        assert!(eps.is_unit());
        assert_eq!(convolve(&eps, &ones, &b2).unwrap(), star);
        let same = equivalent_on_box(&star, &star, &b2).unwrap();
        assert_eq!(same.witness, Some(builtin("identity_I", b2).unwrap()));
    }

    #[test]
    fn prime_certificates() {
        let b1 = IndexBox::cube(1, 12).unwrap();
        assert_eq!(norm_prime_certificate(&indicator(b1, &[2])).unwrap(), PrimeCertificate::CertifiedPrime);
        let b2 = IndexBox::product(2, 12).unwrap();
        assert_eq!(norm_prime_certificate(&indicator(b2, &[2, 3])).unwrap(), PrimeCertificate::Unknown);
        let ez1 = add(&builtin("u_EZ", b2).unwrap(), &builtin("identity_I", b2).unwrap()).unwrap();
        assert!(norm_prime_certificate(&ez1).is_err());
        assert!(norm_prime_certificate(&ArithFunction::zero(b2)).is_err());
    }

    #[test]
    fn subring_examples() {
        let b = IndexBox::cube(2, 8).unwrap();
        let star = builtin("u_star", b).unwrap();
        assert!(subring_membership(&star, Subring::Star));
        assert!(!subring_membership(&star, Subring::EulerZagier));
        assert!(subring_membership(&convolve(&star, &star, &b).unwrap(), Subring::Star));
        assert!(subring_membership(&invert(&star, &b).unwrap(), Subring::Star));
        let b3 = IndexBox::cube(3, 9).unwrap();
        let av = builtin("u_AV", b3).unwrap();
        assert!(subring_membership(&av, Subring::EulerZagier));
        assert!(subring_membership(&av, Subring::MordellTornheim));
        assert!(subring_membership(&av, Subring::ApostolVu));
    }
}
