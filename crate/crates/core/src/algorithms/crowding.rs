use rand::seq::index;
use rand::Rng;

use super::{Generation, RunContext};
use crate::ea::{de_trial_vector, distance, tournament_index, Direction, Individual, Population};
use crate::error::Result;

/// Index among `candidates` nearest to `genome`; distance ties go to the
/// lowest population index.
pub fn nearest_member(genome: &[f64], members: &[Individual], candidates: &[usize]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for &c in candidates {
        let d = distance(genome, &members[c].genome);
        match best {
            Some((bi, bd)) if d > bd || (d == bd && c > bi) => {}
            _ => best = Some((c, d)),
        }
    }
    best.map(|(i, _)| i)
}

/// Replaces the member of `candidates` nearest to `child` if the child is
/// strictly better. Returns the replaced index.
pub fn crowding_replacement_among(
    child: Individual,
    pop: &mut Population,
    candidates: &[usize],
    direction: Direction,
) -> Option<usize> {
    let nearest = nearest_member(&child.genome, pop, candidates)?;
    if direction.is_better(child.fitness(), pop[nearest].fitness()) {
        pop.replace(nearest, child);
        Some(nearest)
    } else {
        None
    }
}

/// De Jong crowding: compare `child` with the nearest of `cf` members sampled
/// without replacement. With `cf == |pop|` no random numbers are drawn.
pub fn crowding_replacement<R: Rng + ?Sized>(
    child: Individual,
    pop: &mut Population,
    cf: usize,
    rng: &mut R,
    direction: Direction,
) -> Option<usize> {
    let n = pop.capacity();
    debug_assert!((1..=n).contains(&cf));
    let candidates: Vec<usize> = if cf >= n { (0..n).collect() } else { index::sample(rng, n, cf).into_vec() };
    crowding_replacement_among(child, pop, &candidates, direction)
}

pub(super) struct CrowdingGa;

impl Generation for CrowdingGa {
    fn generation(&mut self, ctx: &mut RunContext<'_>) -> Result<()> {
        let n = ctx.population.capacity();
        let direction = ctx.problem.direction();
        let cf = ctx.config.crowding_factor();
        let parents = ctx.population.clone();
        let mut produced = 0;
        while produced < n {
            let better = |a: usize, b: usize| direction.is_better(parents[a].fitness(), parents[b].fitness());
            let i = tournament_index(n, &mut ctx.rng, better);
            let j = tournament_index(n, &mut ctx.rng, better);
            let (c1, c2) =
                ctx.config.ga.offspring(&parents[i].genome, &parents[j].genome, &mut ctx.rng, ctx.problem.bounds())?;
            for c in [c1, c2].into_iter().take(n - produced) {
                let child = ctx.evaluate(c)?;
                crowding_replacement(child, &mut ctx.population, cf, &mut ctx.rng, direction);
                produced += 1;
            }
        }
        Ok(())
    }
}

pub(super) struct CrowdingDe;

impl Generation for CrowdingDe {
    fn generation(&mut self, ctx: &mut RunContext<'_>) -> Result<()> {
        let n = ctx.population.capacity();
        let direction = ctx.problem.direction();
        let cf = ctx.config.crowding_factor();
        let (f, cr) = (ctx.config.de_f, ctx.config.de_cr);
        for i in 0..n {
            let trial = de_trial_vector(i, &ctx.population, f, cr, &mut ctx.rng, ctx.problem.bounds())?;
            let child = ctx.evaluate(trial)?;
            crowding_replacement(child, &mut ctx.population, cf, &mut ctx.rng, direction);
        }
        Ok(())
    }
}
