//! Real-analytic side: certified Riemann zeta enclosures, growth bounds for
//! coefficients and inverses, and the region predicates used by the
//! zero-free-region results.

mod growth;
mod region;
pub(crate) mod zeta;

pub use growth::{
    find_alpha, growth_violation, inverse_bound_check, inverse_bound_violation, verify_growth_bound, AlphaFit,
    AlphaSearch, AlphaVector, GrowthBound,
};
pub use region::{in_region_abs_ez, in_region_pointwise, in_region_zfr, in_region_zfr2};
pub use zeta::{
    divisor_power_sum, partial_zeta, round_down, round_up, zeta_enclosure, zeta_upper, Enclosure, POLE_GUARD,
    ROUNDING_SLACK, ZETA_TERMS,
};
