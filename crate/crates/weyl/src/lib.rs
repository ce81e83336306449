//! Exact arithmetic for polynomials over ℚ and for the ring of differential
//! operators with polynomial coefficients, used to prove the identities among
//! the invariant polynomials and operators of `ℍ_{1,1}` and `ℍ_{1,m}` with zero
//! tolerance.

pub mod error;
pub mod op;
pub mod poly;
pub mod relations;

pub use error::{Error, Result};
pub use op::WeylOperator;
pub use poly::{rat, Monomial, RationalPoly, Vars};

/// Crate version, echoed in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
