//! Niching evolutionary algorithms for multimodal optimization.
//!
//! The crate bundles:
//!
//! * [`ea`]: real-coded individuals, variation operators, selection and the
//!   fitness-evaluation budget that terminates every run.
//! * [`problems`]: the classic two-dimensional niching benchmarks.
//! * [`algorithms`]: preselection, crowding (GA and DE), fitness sharing
//!   (GA and DE), the species conserving GA and species-based DE.
//! * [`grating`]: the varied-line-spacing holographic grating design objective.
//! * [`metrics`]: peak ratio, average minimum distance, best fitness and
//!   distinct peak counts.
//! * [`stats`]: Welch t, Mann-Whitney U and two-sample Kolmogorov-Smirnov tests
//!   and pairwise significance matrices.
//! * [`harness`]: the multi-run experiment runner and its report writers.

pub mod algorithms;
pub mod ea;
pub mod error;
pub mod grating;
pub mod harness;
pub mod metrics;
pub mod problems;
pub mod stats;

pub use error::{Error, Result};
