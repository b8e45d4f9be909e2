//! Multiple arithmetic functions materialized on a truncation box.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::index::{IndexBox, MultiIndex};

/// Exact rational coefficient.
pub type Scalar = BigRational;

/// A k-tuple arithmetic function restricted to a divisor-closed box.
///
/// Values are stored sparsely: an index of the box that has no entry is zero.
/// Entries are never stored with value zero. Nothing is claimed about indices
/// outside the box.
#[derive(Clone, Debug)]
pub struct ArithFunction {
    domain: IndexBox,
    values: BTreeMap<MultiIndex, Scalar>,
    name: Option<String>,
}

impl ArithFunction {
    pub fn zero(domain: IndexBox) -> Self {
        ArithFunction { domain, values: BTreeMap::new(), name: None }
    }

    /// Builds a function from explicit entries. Duplicate indices are rejected.
    pub fn from_entries(
        domain: IndexBox,
        entries: impl IntoIterator<Item = (MultiIndex, Scalar)>,
    ) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (n, v) in entries {
            if n.arity() != domain.arity() {
                return Err(Error::ArityMismatch { left: domain.arity(), right: n.arity() });
            }
            if !domain.contains(&n) {
                return Err(Error::InvalidIndex(format!("{n} lies outside {domain}")));
            }
            if values.contains_key(&n) {
                return Err(Error::InvalidIndex(format!("duplicate index {n}")));
            }
            values.insert(n, v);
        }
        values.retain(|_, v| !v.is_zero());
        Ok(ArithFunction { domain, values, name: None })
    }

    /// Tabulates `rule` on every index of the box.
    pub fn from_fn(domain: IndexBox, mut rule: impl FnMut(&MultiIndex) -> Scalar) -> Self {
        let values = domain
            .indices()
            .into_iter()
            .filter_map(|n| {
                let v = rule(&n);
                (!v.is_zero()).then_some((n, v))
            })
            .collect();
        ArithFunction { domain, values, name: None }
    }

    pub(crate) fn from_sorted_map(domain: IndexBox, mut values: BTreeMap<MultiIndex, Scalar>) -> Self {
        values.retain(|_, v| !v.is_zero());
        ArithFunction { domain, values, name: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn arity(&self) -> usize {
        self.domain.arity()
    }

    pub fn domain(&self) -> &IndexBox {
        &self.domain
    }

    /// Value at `n`; zero when `n` has no entry.
    ///
    /// # Panics
    /// If `n` lies outside the box, since the value there is unknown.
    pub fn get(&self, n: &MultiIndex) -> Scalar {
        assert!(self.domain.contains(n), "{n} is outside the domain {}", self.domain);
        self.values.get(n).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Stored (nonzero) value at `n`, if any.
    pub fn value(&self, n: &MultiIndex) -> Option<&Scalar> {
        self.values.get(n)
    }

    /// Nonzero entries in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.values.iter()
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn at_one(&self) -> Scalar {
        self.values.get(&MultiIndex::one(self.arity())).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `f(1,...,1) != 0`.
    pub fn is_unit(&self) -> bool {
        self.values.contains_key(&MultiIndex::one(self.arity()))
    }

    /// Zero on the whole box.
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Restriction to a smaller box.
    pub fn restrict(&self, sub: &IndexBox) -> Result<Self> {
        if !sub.is_subset_of(&self.domain) {
            return Err(Error::BoxNotCovered { requested: sub.to_string(), available: self.domain.to_string() });
        }
        let values = self.values.iter().filter(|(n, _)| sub.contains(n)).map(|(n, v)| (n.clone(), v.clone())).collect();
        Ok(ArithFunction { domain: *sub, values, name: self.name.clone() })
    }

    /// Largest |f(n)| over the box.
    pub fn max_abs(&self) -> Scalar {
        self.values.values().map(|v| v.abs()).max().unwrap_or_else(Scalar::zero)
    }

    /// Index-by-index equality on `sub`, which both domains must contain.
    pub fn agrees_on(&self, other: &ArithFunction, sub: &IndexBox) -> bool {
        if self.arity() != other.arity() || !sub.is_subset_of(&self.domain) || !sub.is_subset_of(&other.domain) {
            return false;
        }
        let lhs = self.values.iter().filter(|(n, _)| sub.contains(n));
        let rhs = other.values.iter().filter(|(n, _)| sub.contains(n));
        lhs.eq(rhs)
    }
}

/// Same domain and same values; the name tag is ignored.
impl PartialEq for ArithFunction {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.values == other.values
    }
}

impl fmt::Display for ArithFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {} [", self.name.as_deref().unwrap_or("f"), self.domain)?;
        for (i, (n, v)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}: {v}")?;
        }
        write!(f, "]")
    }
}

/// The named indicator functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `I(n) = 1` iff `n = (1,...,1)`.
    Identity,
    /// Constant one.
    Ones,
    /// Strict chain `n_1 < ... < n_k`.
    EulerZagier,
    /// Weak chain `n_1 <= ... <= n_k`.
    Star,
    /// Last coordinate equal to the sum of the others: `n_k = n_1 + ... + n_{k-1}`.
    MordellTornheim,
    /// Strict chain together with `n_k = n_1 + ... + n_{k-1}`.
    ApostolVu,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::Identity,
        Builtin::Ones,
        Builtin::EulerZagier,
        Builtin::Star,
        Builtin::MordellTornheim,
        Builtin::ApostolVu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Identity => "identity_I",
            Builtin::Ones => "ones",
            Builtin::EulerZagier => "u_EZ",
            Builtin::Star => "u_star",
            Builtin::MordellTornheim => "u_MT",
            Builtin::ApostolVu => "u_AV",
        }
    }

    pub fn min_arity(self) -> usize {
        match self {
            Builtin::MordellTornheim | Builtin::ApostolVu => 2,
            _ => 1,
        }
    }

    pub fn check_arity(self, k: usize) -> Result<()> {
        if k < self.min_arity() {
            return Err(Error::UnsupportedArity { name: self.name().into(), k });
        }
        Ok(())
    }

    /// Indicator value at `n`.
    pub fn holds(self, n: &[u64]) -> bool {
        let strict = || n.windows(2).all(|w| w[0] < w[1]);
        let tail_is_sum = || {
            let (last, head) = n.split_last().expect("nonempty index");
            head.iter().sum::<u64>() == *last
        };
        match self {
            Builtin::Identity => n.iter().all(|&e| e == 1),
            Builtin::Ones => true,
            Builtin::EulerZagier => strict(),
            Builtin::Star => n.windows(2).all(|w| w[0] <= w[1]),
            Builtin::MordellTornheim => tail_is_sum(),
            Builtin::ApostolVu => strict() && tail_is_sum(),
        }
    }

    /// Materializes the indicator on a box.
    pub fn materialize(self, domain: IndexBox) -> Result<ArithFunction> {
        self.check_arity(domain.arity())?;
        let values = domain
            .indices()
            .into_iter()
            .filter(|n| self.holds(n.entries()))
            .map(|n| (n, Scalar::one()))
            .collect();
        Ok(ArithFunction { domain, values, name: Some(self.name().to_string()) })
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownBuiltin(s.to_string()))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Named constructor, `builtin("u_star", 2, box)`.
pub fn builtin(name: &str, domain: IndexBox) -> Result<ArithFunction> {
    name.parse::<Builtin>()?.materialize(domain)
}
