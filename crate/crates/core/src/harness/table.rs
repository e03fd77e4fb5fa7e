use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algorithms::TracePoint;
use crate::error::{Error, Result};
use crate::metrics::MetricReport;

pub(crate) const CSV_HEADER: [&str; 6] = ["algorithm", "problem", "run", "seed", "metric", "value"];

/// Outcome of one seeded run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub problem: String,
    pub run: usize,
    pub seed: u64,
    pub evals_used: u64,
    pub metrics: MetricReport,
    pub trace: Vec<TracePoint>,
}

impl RunRecord {
    /// Long-format CSV rows, one per defined metric.
    pub fn rows(&self) -> Vec<[String; 6]> {
        Metric::ALL
            .iter()
            .filter_map(|&m| {
                let v = m.value(self)?;
                Some([
                    self.algorithm.clone(),
                    self.problem.clone(),
                    self.run.to_string(),
                    self.seed.to_string(),
                    m.name().to_string(),
                    v.to_string(),
                ])
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    BestFitness,
    DistinctPeaks,
    PeakRatio,
    AvgMinDistance,
    EvalsUsed,
}

impl Metric {
    pub const ALL: [Metric; 5] =
        [Metric::BestFitness, Metric::DistinctPeaks, Metric::PeakRatio, Metric::AvgMinDistance, Metric::EvalsUsed];

    pub fn name(self) -> &'static str {
        match self {
            Metric::BestFitness => "best_fitness",
            Metric::DistinctPeaks => "distinct_peaks",
            Metric::PeakRatio => "peak_ratio",
            Metric::AvgMinDistance => "avg_min_distance",
            Metric::EvalsUsed => "evals_used",
        }
    }

    /// Row caption used in summary tables.
    pub fn caption(self) -> &'static str {
        match self {
            Metric::BestFitness => "Best Fitness",
            Metric::DistinctPeaks => "Peaks Found",
            Metric::PeakRatio => "Peak Ratio",
            Metric::AvgMinDistance => "Average Minimum Distance",
            Metric::EvalsUsed => "Evaluations Used",
        }
    }

    pub fn value(self, record: &RunRecord) -> Option<f64> {
        let m = &record.metrics;
        match self {
            Metric::BestFitness => m.best_fitness,
            Metric::DistinctPeaks => Some(m.distinct_peaks as f64),
            Metric::PeakRatio => m.peak_ratio,
            Metric::AvgMinDistance => m.avg_min_distance,
            Metric::EvalsUsed => Some(record.evals_used as f64),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| Error::config(format!("unknown metric `{s}`")))
    }
}

/// Mean, sample standard deviation and range of one (algorithm, problem) cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub n: usize,
    pub mean: f64,
    /// NaN for a single run.
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
}

impl CellSummary {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let stddev = if n > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            f64::NAN
        };
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Some(Self { n, mean, stddev, min, max })
    }
}

/// Every run of an experiment, ordered by algorithm, problem and run index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    algorithms: Vec<String>,
    problems: Vec<String>,
    runs: usize,
    records: Vec<RunRecord>,
}

impl ResultTable {
    pub fn new(algorithms: Vec<String>, problems: Vec<String>, runs: usize, mut records: Vec<RunRecord>) -> Self {
        let pos = |list: &[String], x: &str| list.iter().position(|s| s == x).unwrap_or(usize::MAX);
        records.sort_by_key(|r| (pos(&algorithms, &r.algorithm), pos(&problems, &r.problem), r.run));
        Self { algorithms, problems, runs, records }
    }

    pub fn algorithms(&self) -> &[String] {
        &self.algorithms
    }

    pub fn problems(&self) -> &[String] {
        &self.problems
    }

    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn records(&self) -> &[RunRecord] {
        &self.records
    }

    pub fn cell(&self, algorithm: &str, problem: &str) -> impl Iterator<Item = &RunRecord> {
        let (algorithm, problem) = (algorithm.to_owned(), problem.to_owned());
        self.records.iter().filter(move |r| r.algorithm == algorithm && r.problem == problem)
    }

    /// Per-run values of `metric`; runs where it is undefined are skipped.
    pub fn values(&self, algorithm: &str, problem: &str, metric: Metric) -> Vec<f64> {
        self.cell(algorithm, problem).filter_map(|r| metric.value(r)).collect()
    }

    pub fn summary(&self, algorithm: &str, problem: &str, metric: Metric) -> Option<CellSummary> {
        CellSummary::of(&self.values(algorithm, problem, metric))
    }
}
