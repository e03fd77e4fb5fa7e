use super::{Generation, RunContext};
use crate::ea::{de_trial_vector, distance, tournament_index, Direction, Individual};
use crate::error::Result;

/// Offset keeping transformed scores strictly positive.
pub const SHARING_EPSILON: f64 = 1e-9;

/// Triangular sharing function `1 - (d / radius)^alpha` inside the radius.
fn sharing_kernel(d: f64, radius: f64, alpha: f64) -> f64 {
    if d < radius {
        1.0 - (d / radius).powf(alpha)
    } else {
        0.0
    }
}

/// Degree of sharing of member `i`: the sum of `sh(d(x_i, x_j))` over all
/// `j`, including `i` itself, so it is at least 1.
pub fn sharing_denominator(i: usize, members: &[Individual], radius: f64, alpha: f64) -> f64 {
    let xi = &members[i].genome;
    members.iter().map(|m| sharing_kernel(distance(xi, &m.genome), radius, alpha)).sum()
}

/// Shared fitness of member `i`, treating raw fitness as larger-is-better.
pub fn shared_fitness(i: usize, members: &[Individual], radius: f64, alpha: f64) -> f64 {
    members[i].fitness() / sharing_denominator(i, members, radius, alpha)
}

/// Maps raw fitness onto positive larger-is-better scores. Minimization uses
/// `f_max - f + eps`; maximization is shifted the same way only when some
/// value is negative.
pub fn sharing_scores(fitness: &[f64], direction: Direction) -> Vec<f64> {
    match direction {
        Direction::Minimize => {
            let worst = fitness.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            fitness.iter().map(|f| worst - f + SHARING_EPSILON).collect()
        }
        Direction::Maximize => {
            let low = fitness.iter().copied().fold(f64::INFINITY, f64::min);
            if low >= 0.0 {
                fitness.to_vec()
            } else {
                fitness.iter().map(|f| f - low + SHARING_EPSILON).collect()
            }
        }
    }
}

/// Direction-aware shared fitness of every member; larger is better.
pub fn shared_fitnesses(members: &[Individual], direction: Direction, radius: f64, alpha: f64) -> Vec<f64> {
    let raw: Vec<f64> = members.iter().map(Individual::fitness).collect();
    let scores = sharing_scores(&raw, direction);
    let n = members.len();
    // symmetric kernel: fill the upper triangle once
    let mut denom = vec![1.0; n];
    for i in 0..n {
        for j in i + 1..n {
            let s = sharing_kernel(distance(&members[i].genome, &members[j].genome), radius, alpha);
            denom[i] += s;
            denom[j] += s;
        }
    }
    scores.iter().zip(&denom).map(|(s, d)| s / d).collect()
}

pub(super) struct SharingGa;

impl Generation for SharingGa {
    fn generation(&mut self, ctx: &mut RunContext<'_>) -> Result<()> {
        let n = ctx.population.capacity();
        let cfg = ctx.config;
        let parents = ctx.population.clone();
        let shared = shared_fitnesses(&parents, ctx.problem.direction(), cfg.sharing_radius, cfg.sharing_alpha);
        let better = |a: usize, b: usize| shared[a] > shared[b];
        let mut slot = 0;
        while slot < n {
            let i = tournament_index(n, &mut ctx.rng, better);
            let j = tournament_index(n, &mut ctx.rng, better);
            let (c1, c2) =
                cfg.ga.offspring(&parents[i].genome, &parents[j].genome, &mut ctx.rng, ctx.problem.bounds())?;
            for c in [c1, c2].into_iter().take(n - slot) {
                let child = ctx.evaluate(c)?;
                ctx.population.replace(slot, child);
                slot += 1;
            }
        }
        Ok(())
    }
}

/// Trials are generated against the generation-start population; each target
/// then faces its own trial on shared fitness computed over parents and
/// trials together.
pub(super) struct SharingDe;

impl Generation for SharingDe {
    fn generation(&mut self, ctx: &mut RunContext<'_>) -> Result<()> {
        let n = ctx.population.capacity();
        let cfg = ctx.config;
        let parents = ctx.population.clone();
        let mut trials = Vec::with_capacity(n);
        let mut exhausted = None;
        for i in 0..n {
            let genome = de_trial_vector(i, &parents, cfg.de_f, cfg.de_cr, &mut ctx.rng, ctx.problem.bounds())?;
            match ctx.evaluate(genome) {
                Ok(t) => trials.push(t),
                Err(e) if e.is_budget_exhausted() => {
                    exhausted = Some(e);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let k = trials.len();
        let mut pool = parents.into_members();
        pool.extend(trials);
        let shared = shared_fitnesses(&pool, ctx.problem.direction(), cfg.sharing_radius, cfg.sharing_alpha);
        for (t, trial) in pool.drain(n..).enumerate().take(k) {
            if shared[n + t] > shared[t] {
                ctx.population.replace(t, trial);
            }
        }
        exhausted.map_or(Ok(()), Err)
    }
}
