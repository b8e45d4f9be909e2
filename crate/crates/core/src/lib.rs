//! Multiple arithmetic functions `f: ℕ^k → ℚ` under multiple Dirichlet
//! convolution, and certified evaluation of the associated multiple
//! Dirichlet series.
//!
//! * [`function`], [`ring`]: exact values on finite boxes, convolution and
//!   recursive inversion.
//! * [`ufd`]: norm, divisibility on a box, prime certificates, subrings and
//!   the prime-position encoding.
//! * [`analysis`]: ζ enclosures, growth bounds, inverse bounds and region
//!   predicates.
//! * [`series`]: truncated evaluation with certified radii and identity
//!   checks.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod function;
pub mod index;
pub mod io;
pub mod numtheory;
pub mod ring;
pub mod series;
pub mod ufd;
pub mod verify;

pub use error::{Error, Result};
pub use function::{builtin, ArithFunction, Builtin, Scalar};
pub use index::{BoxShape, IndexBox, MultiIndex};
