//! Numerical core for the Siegel-Jacobi space ℍ_{n,m} and the Siegel-Jacobi disk 𝔻_{n,m}.
//!
//! Functions on these spaces are handled through a real chart
//! (`x_ij`, `y_ij` for `i <= j`, then `u_kl`, `v_kl`) and truncated Taylor
//! polynomials ([`jet::Jet`]) in the chart variables. Group actions,
//! invariant polynomials and metric tensors are written once over the
//! [`scalar::Scalar`] trait and evaluated either on plain complex numbers or
//! on jets, which is how derivatives of pulled-back functions are obtained.

pub mod chart;
pub mod error;
pub mod groups;
pub mod helgason;
pub mod invariants;
pub mod jet;
pub mod linalg;
pub mod maassjacobi;
pub mod metrics;
pub mod operators;
pub mod sample;
pub mod scalar;
pub mod testfn;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// Crate version, echoed in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
