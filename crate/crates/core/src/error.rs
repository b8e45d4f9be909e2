use thiserror::Error;

use crate::index::MultiIndex;

/// Errors raised by ring operations, analytic checks and file I/O.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("box {requested} is not covered by the operand domain {available}")]
    BoxNotCovered { requested: String, available: String },

    #[error("invalid multi-index: {0}")]
    InvalidIndex(String),

    #[error("invalid box: {0}")]
    InvalidBox(String),

    #[error("function is not a unit: f(1,...,1) = 0")]
    NotAUnit,

    #[error("unknown built-in function `{0}`")]
    UnknownBuiltin(String),

    #[error("built-in `{name}` does not support arity {k}")]
    UnsupportedArity { name: String, k: usize },

    #[error("zeta argument {0} is within the pole guard")]
    PoleGuard(f64),

    #[error("point outside the certified region: {0}")]
    OutOfRegion(String),

    #[error("no uniform offset up to {t_max} satisfies the zeta product threshold {threshold}")]
    Unsatisfiable { t_max: f64, threshold: f64 },

    #[error("growth bound violated at {0}")]
    GrowthBoundViolated(MultiIndex),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("prime certificate undefined: {0}")]
    PrimalityUndefined(&'static str),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::BoxNotCovered { .. } => "box_not_covered",
            Error::InvalidIndex(_) => "invalid_index",
            Error::InvalidBox(_) => "invalid_box",
            Error::NotAUnit => "not_a_unit",
            Error::UnknownBuiltin(_) => "unknown_builtin",
            Error::UnsupportedArity { .. } => "unsupported_arity",
            Error::PoleGuard(_) => "pole_guard",
            Error::OutOfRegion(_) => "out_of_region",
            Error::Unsatisfiable { .. } => "unsatisfiable",
            Error::GrowthBoundViolated(_) => "growth_bound_violated",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::PrimalityUndefined(_) => "primality_undefined",
            Error::Format(_) => "format",
            Error::Io(_) => "io",
        }
    }

    /// Mathematical failures on well-formed input, as opposed to bad input.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::NotAUnit
                | Error::OutOfRegion(_)
                | Error::PoleGuard(_)
                | Error::GrowthBoundViolated(_)
                | Error::Unsatisfiable { .. }
                | Error::PrimalityUndefined(_)
        )
    }
}
