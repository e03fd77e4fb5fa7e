//! Species seeds: selection, partitioning, and conservation across a
//! generation.
//!
//! A species region is the open ball of radius `species_distance / 2` around
//! its seed.

use std::cmp::Ordering;

use super::{Generation, RunContext};
use crate::ea::{distance, tournament_index, Direction, Individual, Population};
use crate::error::Result;

/// Evaluated member indices ordered best first; equal fitness keeps index
/// order.
fn by_quality(members: &[Individual], direction: Direction) -> Vec<usize> {
    let mut order: Vec<usize> = (0..members.len()).filter(|&i| members[i].is_evaluated()).collect();
    order.sort_by(|&a, &b| direction.cmp_quality(members[b].fitness(), members[a].fitness()));
    order
}

/// Seeds in discovery order: scanning from best to worst, a member becomes a
/// seed when it lies outside every existing seed's region.
pub fn determine_species_seeds(members: &[Individual], species_distance: f64, direction: Direction) -> Vec<usize> {
    partition_species(members, species_distance, direction).seeds
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeciesPartition {
    /// Seed member indices in discovery order.
    pub seeds: Vec<usize>,
    /// Member indices of each species, seed first.
    pub species: Vec<Vec<usize>>,
    /// Species of every member; `None` for unevaluated members.
    pub species_of: Vec<Option<usize>>,
}

/// Runs the seed scan and assigns each non-seed to the first discovered seed
/// whose region contains it.
pub fn partition_species(members: &[Individual], species_distance: f64, direction: Direction) -> SpeciesPartition {
    let radius = species_distance / 2.0;
    let mut seeds: Vec<usize> = Vec::new();
    let mut species: Vec<Vec<usize>> = Vec::new();
    let mut species_of = vec![None; members.len()];
    for i in by_quality(members, direction) {
        let g = &members[i].genome;
        match seeds.iter().position(|&s| distance(g, &members[s].genome) < radius) {
            Some(k) => {
                species[k].push(i);
                species_of[i] = Some(k);
            }
            None => {
                species_of[i] = Some(seeds.len());
                seeds.push(i);
                species.push(vec![i]);
            }
        }
    }
    SpeciesPartition { seeds, species, species_of }
}

/// Outcome of a conservation pass.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Conservation {
    /// Slot holding each seed afterwards, `None` for overflowed seeds.
    pub slots: Vec<Option<usize>>,
    /// Seeds that found no free slot.
    pub overflow: usize,
}

fn worst_of(pop: &Population, slots: impl Iterator<Item = usize>, direction: Direction) -> Option<usize> {
    let mut worst: Option<usize> = None;
    for s in slots {
        let worse = match worst {
            None => true,
            Some(w) => direction.cmp_quality(pop[s].fitness(), pop[w].fitness()) == Ordering::Less,
        };
        if worse {
            worst = Some(s);
        }
    }
    worst
}

/// Copies `seeds` back into `pop`, each slot changing at most once.
///
/// For each seed in order:
/// 1. a free slot already holding the seed's genome is claimed as is;
/// 2. otherwise the worst free member of the seed's species is overwritten;
/// 3. with no free species member, the worst free member overall is.
///
/// Seeds left without a free slot are counted as overflow.
pub fn conserve_species_seeds(
    pop: &mut Population,
    seeds: &[Individual],
    species_distance: f64,
    direction: Direction,
) -> Conservation {
    let radius = species_distance / 2.0;
    let mut taken = vec![false; pop.capacity()];
    let mut out = Conservation::default();
    for seed in seeds {
        if let Some(s) = (0..pop.capacity()).find(|&s| !taken[s] && pop[s].genome == seed.genome) {
            taken[s] = true;
            out.slots.push(Some(s));
            continue;
        }
        let free = |s: &usize| !taken[*s];
        let in_species = (0..pop.capacity()).filter(free).filter(|&s| distance(&pop[s].genome, &seed.genome) < radius);
        let target =
            worst_of(pop, in_species, direction).or_else(|| worst_of(pop, (0..pop.capacity()).filter(free), direction));
        match target {
            Some(s) => {
                pop.replace(s, seed.clone());
                taken[s] = true;
                out.slots.push(Some(s));
            }
            None => {
                out.slots.push(None);
                out.overflow += 1;
            }
        }
    }
    out
}

/// Seeds are taken before variation and conserved after it, including after
/// a generation cut short by the budget.
pub(super) struct Scga;

impl Generation for Scga {
    fn generation(&mut self, ctx: &mut RunContext<'_>) -> Result<()> {
        let n = ctx.population.capacity();
        let direction = ctx.problem.direction();
        let sigma = ctx.config.species_distance;
        let parents = ctx.population.clone();
        let seeds: Vec<Individual> =
            determine_species_seeds(&parents, sigma, direction).into_iter().map(|i| parents[i].clone()).collect();

        let mut outcome = Ok(());
        let mut slot = 0;
        'fill: while slot < n {
            let better = |a: usize, b: usize| direction.is_better(parents[a].fitness(), parents[b].fitness());
            let i = tournament_index(n, &mut ctx.rng, better);
            let j = tournament_index(n, &mut ctx.rng, better);
            let (c1, c2) =
                ctx.config.ga.offspring(&parents[i].genome, &parents[j].genome, &mut ctx.rng, ctx.problem.bounds())?;
            for c in [c1, c2].into_iter().take(n - slot) {
                match ctx.evaluate(c) {
                    Ok(child) => {
                        ctx.population.replace(slot, child);
                        slot += 1;
                    }
                    Err(e) => {
                        outcome = Err(e);
                        break 'fill;
                    }
                }
            }
        }
        conserve_species_seeds(&mut ctx.population, &seeds, sigma, direction);
        outcome
    }
}
