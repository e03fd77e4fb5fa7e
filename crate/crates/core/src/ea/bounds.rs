use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned box `[lo_i, hi_i]` for every coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct Bounds {
    intervals: Vec<(f64, f64)>,
}

impl Bounds {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::config("bounds need at least one coordinate"));
        }
        for (i, &(lo, hi)) in intervals.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::config(format!("coordinate {i}: need finite lo < hi, got [{lo}, {hi}]")));
            }
        }
        Ok(Self { intervals })
    }

    /// The same interval repeated `dim` times.
    pub fn uniform(lo: f64, hi: f64, dim: usize) -> Result<Self> {
        Self::new(vec![(lo, hi); dim])
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn lo(&self, i: usize) -> f64 {
        self.intervals[i].0
    }

    pub fn hi(&self, i: usize) -> f64 {
        self.intervals[i].1
    }

    pub fn range(&self, i: usize) -> f64 {
        let (lo, hi) = self.intervals[i];
        hi - lo
    }

    /// Length of the box diagonal.
    pub fn diameter(&self) -> f64 {
        (0..self.dim()).map(|i| self.range(i).powi(2)).sum::<f64>().sqrt()
    }

    pub fn clamp_coord(&self, i: usize, x: f64) -> f64 {
        let (lo, hi) = self.intervals[i];
        x.clamp(lo, hi)
    }

    pub fn clamp(&self, genome: &mut [f64]) {
        debug_assert_eq!(genome.len(), self.dim());
        for (i, x) in genome.iter_mut().enumerate() {
            *x = self.clamp_coord(i, *x);
        }
    }

    pub fn contains(&self, genome: &[f64]) -> bool {
        genome.len() == self.dim() && genome.iter().zip(&self.intervals).all(|(&x, &(lo, hi))| lo <= x && x <= hi)
    }

    pub fn check_dim(&self, genome: &[f64]) -> Result<()> {
        if genome.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: genome.len() })
        }
    }

    /// Uniform sample from the box.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.intervals.iter().map(|&(lo, hi)| lo + rng.random::<f64>() * (hi - lo)).collect()
    }

    /// Min-max normalization of every coordinate to `[0, 1]`.
    pub fn normalize(&self, genome: &[f64]) -> Vec<f64> {
        genome.iter().zip(&self.intervals).map(|(&x, &(lo, hi))| (x - lo) / (hi - lo)).collect()
    }

    pub fn denormalize(&self, unit: &[f64]) -> Vec<f64> {
        unit.iter().zip(&self.intervals).map(|(&u, &(lo, hi))| lo + u * (hi - lo)).collect()
    }
}

impl TryFrom<Vec<(f64, f64)>> for Bounds {
    type Error = Error;

    fn try_from(intervals: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(intervals)
    }
}

impl From<Bounds> for Vec<(f64, f64)> {
    fn from(b: Bounds) -> Self {
        b.intervals
    }
}
