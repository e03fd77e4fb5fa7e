use std::cmp::Ordering;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

/// Optimization direction of a problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    /// `a` is strictly better than `b`.
    pub fn is_better(self, a: f64, b: f64) -> bool {
        match self {
            Direction::Minimize => a < b,
            Direction::Maximize => a > b,
        }
    }

    /// Orders by quality: `Greater` means `a` is better than `b`.
    pub fn cmp_quality(self, a: f64, b: f64) -> Ordering {
        let ord = a.total_cmp(&b);
        match self {
            Direction::Minimize => ord.reverse(),
            Direction::Maximize => ord,
        }
    }

    /// The worst possible value under this direction.
    pub fn worst_value(self) -> f64 {
        match self {
            Direction::Minimize => f64::INFINITY,
            Direction::Maximize => f64::NEG_INFINITY,
        }
    }
}

/// A real-valued genome with its cached fitness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub genome: Vec<f64>,
    fitness: Option<f64>,
    /// Budget tick that produced `fitness`.
    eval_index: Option<u64>,
}

impl Individual {
    pub fn new(genome: Vec<f64>) -> Self {
        Self { genome, fitness: None, eval_index: None }
    }

    pub fn evaluated(genome: Vec<f64>, fitness: f64, eval_index: u64) -> Self {
        Self { genome, fitness: Some(fitness), eval_index: Some(eval_index) }
    }

    pub fn dim(&self) -> usize {
        self.genome.len()
    }

    pub fn is_evaluated(&self) -> bool {
        self.fitness.is_some()
    }

    pub fn try_fitness(&self) -> Option<f64> {
        self.fitness
    }

    /// Fitness of an evaluated individual; panics if it was never evaluated.
    pub fn fitness(&self) -> f64 {
        self.fitness.expect("unevaluated individual compared by fitness")
    }

    pub fn eval_index(&self) -> Option<u64> {
        self.eval_index
    }

    pub(crate) fn set_evaluation(&mut self, fitness: f64, eval_index: u64) {
        self.fitness = Some(fitness);
        self.eval_index = Some(eval_index);
    }
}

/// Fixed-size population. Members are replaced in place, never added or
/// removed, so the size set at construction holds for the whole run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Population {
    members: Vec<Individual>,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Self { members }
    }

    pub fn capacity(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn replace(&mut self, index: usize, ind: Individual) -> Individual {
        std::mem::replace(&mut self.members[index], ind)
    }

    pub fn get_mut(&mut self, index: usize) -> &mut Individual {
        &mut self.members[index]
    }

    /// Index of the best evaluated member; ties go to the lowest index.
    pub fn best_index(&self, direction: Direction) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, m) in self.members.iter().enumerate() {
            let Some(f) = m.try_fitness() else { continue };
            match best {
                Some(b) if !direction.is_better(f, self.members[b].fitness()) => {}
                _ => best = Some(i),
            }
        }
        best
    }

    pub fn best(&self, direction: Direction) -> Option<&Individual> {
        self.best_index(direction).map(|i| &self.members[i])
    }

    pub fn genomes(&self) -> impl Iterator<Item = &[f64]> {
        self.members.iter().map(|m| m.genome.as_slice())
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }
}

impl Deref for Population {
    type Target = [Individual];

    fn deref(&self) -> &[Individual] {
        &self.members
    }
}

impl FromIterator<Individual> for Population {
    fn from_iter<T: IntoIterator<Item = Individual>>(iter: T) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_strictness() {
        assert!(Direction::Minimize.is_better(1.0, 2.0));
        assert!(!Direction::Minimize.is_better(2.0, 2.0));
        assert!(Direction::Maximize.is_better(2.0, 1.0));
        assert_eq!(Direction::Maximize.cmp_quality(3.0, 1.0), Ordering::Greater);
        assert_eq!(Direction::Minimize.cmp_quality(3.0, 1.0), Ordering::Less);
    }

    #[test]
    fn best_skips_unevaluated_and_keeps_first_tie() {
        let pop = Population::new(vec![
            Individual::new(vec![0.0]),
            Individual::evaluated(vec![1.0], 2.0, 0),
            Individual::evaluated(vec![2.0], 2.0, 1),
            Individual::evaluated(vec![3.0], 5.0, 2),
        ]);
        assert_eq!(pop.best_index(Direction::Minimize), Some(1));
        assert_eq!(pop.best_index(Direction::Maximize), Some(3));
        assert_eq!(Population::new(vec![Individual::new(vec![0.0])]).best_index(Direction::Minimize), None);
    }

    #[test]
    #[should_panic(expected = "unevaluated")]
    fn unevaluated_fitness_panics() {
        Individual::new(vec![0.0]).fitness();
    }
}
