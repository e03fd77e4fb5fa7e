//! Two-sample significance tests and pairwise comparison matrices.
//!
//! All tests are two-sided.

mod ks;
mod matrix;
mod mwu;
mod welch;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ks::{kolmogorov_survival, ks_statistic, ks_two_sample};
pub use matrix::{pairwise_matrix, SignificanceMatrix};
pub use mwu::{mann_whitney_u, mann_whitney_u_asymptotic, mann_whitney_u_exact, midranks, EXACT_MAX_PRODUCT};
pub use welch::welch_t;

pub const DEFAULT_ALPHA: f64 = 0.05;

/// Test statistic and two-sided p-value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestOutcome {
    pub statistic: f64,
    pub p_value: f64,
}

/// One metric value per run for one algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub label: String,
    pub values: Vec<f64>,
}

impl SampleSet {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        check_sample(&values)?;
        Ok(Self { label: label.into(), values })
    }
}

pub(crate) fn check_sample(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidSample("empty sample".into()));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidSample(format!("non-finite value {v}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TestKind {
    #[serde(rename = "t")]
    Welch,
    #[serde(rename = "mwu")]
    MannWhitney,
    #[serde(rename = "ks")]
    KolmogorovSmirnov,
}

impl TestKind {
    pub const ALL: [TestKind; 3] = [TestKind::Welch, TestKind::MannWhitney, TestKind::KolmogorovSmirnov];

    pub fn name(self) -> &'static str {
        match self {
            TestKind::Welch => "t",
            TestKind::MannWhitney => "mwu",
            TestKind::KolmogorovSmirnov => "ks",
        }
    }

    pub fn run(self, a: &[f64], b: &[f64]) -> Result<TestOutcome> {
        match self {
            TestKind::Welch => welch_t(a, b),
            TestKind::MannWhitney => mann_whitney_u(a, b),
            TestKind::KolmogorovSmirnov => ks_two_sample(a, b),
        }
    }
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TestKind::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::config(format!("unknown test `{s}` (expected t, mwu or ks)")))
    }
}
