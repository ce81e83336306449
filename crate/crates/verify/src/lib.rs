//! Batch verification of the numerical and exact claims about the
//! Siegel-Jacobi space, with reports in JSON, CSV or text.
//!
//! A run is fully determined by its [`RunConfig`]: every sample is drawn from
//! a ChaCha stream keyed by the seed, the suite, the entry and the trial, so
//! reports are byte-identical across runs and thread counts as long as
//! timings are off.

pub mod config;
pub mod error;
pub mod report;
mod run;
pub mod suites;

pub use config::{PartialConfig, RunConfig, Suite};
pub use error::{Error, Result};
pub use report::{emit, Entry, EntryKind, FittedConstant, Format, Report, SuiteReport};
pub use run::run;
