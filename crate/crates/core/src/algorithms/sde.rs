use rand::seq::index;

use super::species::partition_species;
use super::{Generation, RunContext};
use crate::ea::de_trial_from_donors;
use crate::error::Result;

/// Species-partitioned DE/rand/1/bin.
///
/// Donors come from the target's own species. A species with fewer than four
/// members is padded with donors drawn from the rest of the population. Each
/// target is replaced only by a strictly better trial, so seeds survive
/// unless improved.
pub(super) struct Sde;

impl Generation for Sde {
    fn generation(&mut self, ctx: &mut RunContext<'_>) -> Result<()> {
        let n = ctx.population.capacity();
        let cfg = ctx.config;
        let direction = ctx.problem.direction();
        let parents = ctx.population.clone();
        let partition = partition_species(&parents, cfg.species_distance, direction);

        for i in 0..n {
            let Some(k) = partition.species_of[i] else { continue };
            let own: Vec<usize> = partition.species[k].iter().copied().filter(|&j| j != i).collect();
            let mut donors: Vec<usize> = if own.len() >= 3 {
                index::sample(&mut ctx.rng, own.len(), 3).into_iter().map(|p| own[p]).collect()
            } else {
                own.clone()
            };
            if donors.len() < 3 {
                let others: Vec<usize> = (0..n).filter(|&j| j != i && !own.contains(&j)).collect();
                let need = 3 - donors.len();
                donors.extend(index::sample(&mut ctx.rng, others.len(), need).into_iter().map(|p| others[p]));
            }
            let trial = de_trial_from_donors(
                &parents[i].genome,
                &parents[donors[0]].genome,
                &parents[donors[1]].genome,
                &parents[donors[2]].genome,
                cfg.de_f,
                cfg.de_cr,
                &mut ctx.rng,
                ctx.problem.bounds(),
            );
            let child = ctx.evaluate(trial)?;
            if direction.is_better(child.fitness(), ctx.population[i].fitness()) {
                ctx.population.replace(i, child);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use crate::ea::{Direction, RngStream};
    use crate::problems;

    #[test]
    fn seeds_never_get_worse() {
        let p = problems::himmelblau();
        let cfg = AlgorithmConfig { species_distance: 2.0, ..Default::default() };
        let mut run = Run::new(AlgorithmKind::Sde, &p, &cfg, EvalBudget::new(3000), RngStream::new(8)).unwrap();
        loop {
            let before = run.population().clone();
            let seeds = determine_species_seeds(&before, 2.0, Direction::Minimize);
            let more = run.step().unwrap();
            for s in seeds {
                assert!(run.population()[s].fitness() <= before[s].fitness());
            }
            if !more {
                break;
            }
        }
    }

    #[test]
    fn isolated_species_pad_from_population() {
        // tiny species distance: every member is its own species
        let p = problems::branin();
        let cfg = AlgorithmConfig { species_distance: 1e-12, population_size: 10, ..Default::default() };
        let r = sde(&p, &cfg, EvalBudget::new(500), RngStream::new(2)).unwrap();
        assert_eq!(r.evals_used, 500);
        assert!(r.final_population.iter().all(|m| p.bounds().contains(&m.genome)));
    }
}
