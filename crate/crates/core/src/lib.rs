//! Evaluation toolkit for feature-selection algorithms.
//!
//! The central idea: instead of judging a selector by a single downstream
//! score at one subset size, evaluate the measure at many sizes `k`, treat
//! the observations as a piecewise-linear curve, and summarize it with two
//! numbers — the FSDEM score (normalized area under the curve over a target
//! range `[a, b]`) and its stability score (mean first-order derivative over
//! the same range). Selection-overlap stability indices and a fitness-based
//! improvement measure are included for comparison, together with the
//! selectors, downstream evaluators, dataset handling and benchmark engine
//! needed to run full experiments.

pub mod api;
pub mod data;
pub mod error;
pub mod evaluators;
pub mod harness;
pub mod metrics;
pub mod seed;
pub mod selectors;

pub use error::{Error, Result};

/// Version stamped into every emitted report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
