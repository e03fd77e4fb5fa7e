//! Performance metrics over a final population.

use serde::{Deserialize, Serialize};

use crate::ea::{distance, Bounds, Direction, Individual};
use crate::error::{Error, Result};
use crate::problems::BoundedProblem;

pub const DEFAULT_PEAK_RADIUS: f64 = 0.1;
pub const DEFAULT_FITNESS_THRESHOLD: f64 = 1e-4;

/// Fraction of `peaks` with at least one member within `radius`.
pub fn peak_ratio(members: &[Individual], peaks: &[Vec<f64>], radius: f64) -> Result<f64> {
    if peaks.is_empty() {
        return Err(Error::UndefinedMetric("peak ratio needs at least one known peak"));
    }
    let found = peaks.iter().filter(|p| members.iter().any(|m| distance(p, &m.genome) <= radius)).count();
    Ok(found as f64 / peaks.len() as f64)
}

/// Mean over `peaks` of the distance to the nearest member.
pub fn avg_min_distance(members: &[Individual], peaks: &[Vec<f64>]) -> Result<f64> {
    if peaks.is_empty() {
        return Err(Error::UndefinedMetric("average minimum distance needs at least one known peak"));
    }
    if members.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let total: f64 =
        peaks.iter().map(|p| members.iter().map(|m| distance(p, &m.genome)).fold(f64::INFINITY, f64::min)).sum();
    Ok(total / peaks.len() as f64)
}

/// Fitness of the best evaluated member.
pub fn best_fitness(members: &[Individual], direction: Direction) -> Result<f64> {
    members
        .iter()
        .filter_map(Individual::try_fitness)
        .reduce(|best, f| if direction.is_better(f, best) { f } else { best })
        .ok_or(Error::EmptyPopulation)
}

/// Greedy scan in storage order: a member counts when its fitness passes
/// `threshold` (strictly below for minimization, above for maximization) and
/// it is at least `radius` away from every member counted before it.
pub fn distinct_peaks(members: &[Individual], threshold: f64, radius: f64, direction: Direction) -> usize {
    let points: Vec<(Vec<f64>, f64)> =
        members.iter().filter_map(|m| m.try_fitness().map(|f| (m.genome.clone(), f))).collect();
    count_distinct(&points, threshold, radius, direction)
}

fn count_distinct(points: &[(Vec<f64>, f64)], threshold: f64, radius: f64, direction: Direction) -> usize {
    let mut counted: Vec<&[f64]> = Vec::new();
    for (g, f) in points {
        if !direction.is_better(*f, threshold) {
            continue;
        }
        if counted.iter().all(|c| distance(c, g) >= radius) {
            counted.push(g);
        }
    }
    counted.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MetricSettings {
    pub peak_radius: f64,
    pub fitness_threshold: f64,
    pub exclusion_radius: f64,
}

impl Default for MetricSettings {
    fn default() -> Self {
        Self {
            peak_radius: DEFAULT_PEAK_RADIUS,
            fitness_threshold: DEFAULT_FITNESS_THRESHOLD,
            exclusion_radius: DEFAULT_PEAK_RADIUS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    /// `None` when the problem has no known peaks.
    pub peak_ratio: Option<f64>,
    pub avg_min_distance: Option<f64>,
    /// `None` when nothing was evaluated.
    pub best_fitness: Option<f64>,
    pub distinct_peaks: usize,
}

/// All metrics for a final population on `problem`.
///
/// Distinct peaks are counted on the gap to the known optimum value when the
/// problem has one (so the threshold means "within 1e-4 of optimal"), and on
/// raw fitness otherwise. Problems flagged for normalized peak distances are
/// measured in min-max normalized coordinates.
pub fn report(members: &[Individual], problem: &BoundedProblem, settings: &MetricSettings) -> MetricReport {
    let peaks = problem.known_peaks();
    let (peak_ratio, avg_min_distance) = if peaks.is_empty() || members.is_empty() {
        (None, None)
    } else {
        (peak_ratio(members, peaks, settings.peak_radius).ok(), avg_min_distance(members, peaks).ok())
    };
    MetricReport {
        peak_ratio,
        avg_min_distance,
        best_fitness: best_fitness(members, problem.direction()).ok(),
        distinct_peaks: problem_distinct_peaks(members, problem, settings),
    }
}

fn problem_distinct_peaks(members: &[Individual], problem: &BoundedProblem, settings: &MetricSettings) -> usize {
    let bounds: Option<&Bounds> = problem.normalized_peak_distance().then(|| problem.bounds());
    let points: Vec<(Vec<f64>, f64)> = members
        .iter()
        .filter_map(|m| {
            let f = m.try_fitness()?;
            let g = bounds.map_or_else(|| m.genome.clone(), |b| b.normalize(&m.genome));
            Some((g, f))
        })
        .collect();
    match problem.optimum_value() {
        Some(opt) => {
            let gaps: Vec<(Vec<f64>, f64)> = points.into_iter().map(|(g, f)| (g, (f - opt).abs())).collect();
            count_distinct(&gaps, settings.fitness_threshold, settings.exclusion_radius, Direction::Minimize)
        }
        None => count_distinct(&points, settings.fitness_threshold, settings.exclusion_radius, problem.direction()),
    }
}
