//! Distance, selection and variation operators.

use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{Bounds, Direction, Individual};

pub const DEFAULT_BLEND_ALPHA: f64 = 0.5;
/// Mutation step as a fraction of each coordinate's range.
pub const DEFAULT_MUTATION_SIGMA: f64 = 0.1;

/// Real-coded GA variation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaOperators {
    pub blend_alpha: f64,
    /// Per-coordinate mutation probability; `None` means `1 / dimension`.
    pub mutation_rate: Option<f64>,
    pub mutation_sigma: f64,
}

impl Default for GaOperators {
    fn default() -> Self {
        Self { blend_alpha: DEFAULT_BLEND_ALPHA, mutation_rate: None, mutation_sigma: DEFAULT_MUTATION_SIGMA }
    }
}

impl GaOperators {
    pub fn rate_for(&self, dim: usize) -> f64 {
        self.mutation_rate.unwrap_or(1.0 / dim as f64)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.blend_alpha >= 0.0 && self.blend_alpha.is_finite()) {
            return Err(Error::config("blend_alpha must be finite and >= 0"));
        }
        if !(self.mutation_sigma > 0.0 && self.mutation_sigma.is_finite()) {
            return Err(Error::config("mutation_sigma must be finite and > 0"));
        }
        if let Some(r) = self.mutation_rate {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::config("mutation_rate must lie in [0, 1]"));
            }
        }
        Ok(())
    }

    /// Blend crossover followed by Gaussian mutation of both children.
    pub fn offspring<R: Rng + ?Sized>(
        &self,
        p1: &[f64],
        p2: &[f64],
        rng: &mut R,
        bounds: &Bounds,
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        let (c1, c2) = blend_crossover(p1, p2, self.blend_alpha, rng, bounds)?;
        let rate = self.rate_for(bounds.dim());
        let c1 = gaussian_mutation(&c1, rate, self.mutation_sigma, rng, bounds);
        let c2 = gaussian_mutation(&c2, rate, self.mutation_sigma, rng, bounds);
        Ok((c1, c2))
    }
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    Ok(distance(a, b))
}

#[inline]
pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Draws two indices uniformly with replacement and returns the second only
/// if `better(second, first)` holds, so ties keep the first draw.
pub fn tournament_index<R, F>(n: usize, rng: &mut R, better: F) -> usize
where
    R: Rng + ?Sized,
    F: Fn(usize, usize) -> bool,
{
    let first = rng.random_range(0..n);
    let second = rng.random_range(0..n);
    if better(second, first) {
        second
    } else {
        first
    }
}

pub fn binary_tournament<'a, R: Rng + ?Sized>(
    members: &'a [Individual],
    rng: &mut R,
    direction: Direction,
) -> Result<&'a Individual> {
    if members.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let i =
        tournament_index(members.len(), rng, |a, b| direction.is_better(members[a].fitness(), members[b].fitness()));
    Ok(&members[i])
}

/// BLX-alpha: each child coordinate is uniform on the parents' interval
/// widened by `alpha` times its width on both sides, then clamped.
pub fn blend_crossover<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    alpha: f64,
    rng: &mut R,
    bounds: &Bounds,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if p1.len() != p2.len() {
        return Err(Error::DimensionMismatch { expected: p1.len(), found: p2.len() });
    }
    bounds.check_dim(p1)?;
    let mut c1 = Vec::with_capacity(p1.len());
    let mut c2 = Vec::with_capacity(p1.len());
    for (i, (&a, &b)) in p1.iter().zip(p2).enumerate() {
        let d = (a - b).abs();
        let lo = a.min(b) - alpha * d;
        let hi = a.max(b) + alpha * d;
        let width = hi - lo;
        c1.push(bounds.clamp_coord(i, lo + rng.random::<f64>() * width));
        c2.push(bounds.clamp_coord(i, lo + rng.random::<f64>() * width));
    }
    Ok((c1, c2))
}

/// Perturbs each coordinate with probability `rate` by `N(0, sigma * range_i)`.
pub fn gaussian_mutation<R: Rng + ?Sized>(
    genome: &[f64],
    rate: f64,
    sigma: f64,
    rng: &mut R,
    bounds: &Bounds,
) -> Vec<f64> {
    debug_assert!((0.0..=1.0).contains(&rate));
    genome
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if rng.random::<f64>() >= rate {
                return x;
            }
            let sd = sigma * bounds.range(i);
            match Normal::new(0.0, sd) {
                Ok(n) if sd > 0.0 => bounds.clamp_coord(i, x + n.sample(rng)),
                _ => x,
            }
        })
        .collect()
}

/// DE/rand/1 mutant `a + f * (b - c)`, unclamped.
pub fn de_mutant(a: &[f64], b: &[f64], c: &[f64], f: f64) -> Vec<f64> {
    a.iter().zip(b).zip(c).map(|((&a, &b), &c)| a + f * (b - c)).collect()
}

/// Binomial crossover with one guaranteed mutant coordinate.
pub fn binomial_crossover<R: Rng + ?Sized>(target: &[f64], mutant: &[f64], cr: f64, rng: &mut R) -> Vec<f64> {
    let forced = rng.random_range(0..target.len());
    target
        .iter()
        .zip(mutant)
        .enumerate()
        .map(|(j, (&t, &m))| {
            let take = rng.random::<f64>() < cr;
            if take || j == forced {
                m
            } else {
                t
            }
        })
        .collect()
}

/// DE/rand/1/bin trial vector from explicit donors.
#[allow(clippy::too_many_arguments)]
pub fn de_trial_from_donors<R: Rng + ?Sized>(
    target: &[f64],
    a: &[f64],
    b: &[f64],
    c: &[f64],
    f: f64,
    cr: f64,
    rng: &mut R,
    bounds: &Bounds,
) -> Vec<f64> {
    let mutant = de_mutant(a, b, c, f);
    let mut trial = binomial_crossover(target, &mutant, cr, rng);
    bounds.clamp(&mut trial);
    trial
}

/// DE/rand/1/bin trial vector for `members[target_idx]` with three donors
/// drawn distinct from each other and from the target.
pub fn de_trial_vector<R: Rng + ?Sized>(
    target_idx: usize,
    members: &[Individual],
    f: f64,
    cr: f64,
    rng: &mut R,
    bounds: &Bounds,
) -> Result<Vec<f64>> {
    let n = members.len();
    if n < 4 {
        return Err(Error::config(format!("differential evolution needs at least 4 members, got {n}")));
    }
    let picks = index::sample(rng, n - 1, 3);
    let shift = |i: usize| if i >= target_idx { i + 1 } else { i };
    let [a, b, c] = [shift(picks.index(0)), shift(picks.index(1)), shift(picks.index(2))];
    Ok(de_trial_from_donors(
        &members[target_idx].genome,
        &members[a].genome,
        &members[b].genome,
        &members[c].genome,
        f,
        cr,
        rng,
        bounds,
    ))
}
