use rand::seq::SliceRandom;
use rand::Rng;

use super::{Generation, RunContext};
use crate::error::Result;

/// Parents are paired by a random permutation; child k of a pair competes
/// only with parent k.
pub(super) struct PreselectionGa;

impl Generation for PreselectionGa {
    fn generation(&mut self, ctx: &mut RunContext<'_>) -> Result<()> {
        let n = ctx.population.capacity();
        let direction = ctx.problem.direction();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut ctx.rng);
        for pair in order.chunks(2) {
            let i = pair[0];
            let j = match pair.get(1) {
                Some(&j) => j,
                None => {
                    // odd population: borrow a random mate, keep one child
                    let r = ctx.rng.random_range(0..n - 1);
                    if r >= i {
                        r + 1
                    } else {
                        r
                    }
                }
            };
            let (c1, c2) = ctx.config.ga.offspring(
                &ctx.population[i].genome,
                &ctx.population[j].genome,
                &mut ctx.rng,
                ctx.problem.bounds(),
            )?;
            let child = ctx.evaluate(c1)?;
            if direction.is_better(child.fitness(), ctx.population[i].fitness()) {
                ctx.population.replace(i, child);
            }
            if pair.len() == 2 {
                let child = ctx.evaluate(c2)?;
                if direction.is_better(child.fitness(), ctx.population[j].fitness()) {
                    ctx.population.replace(j, child);
                }
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
    fn members_only_improve_in_place() {
        // Slot-wise fitness never gets worse: every replacement is a child
        // strictly better than the parent it displaces.
        let p = problems::himmelblau();
        let cfg = AlgorithmConfig::default();
        let mut run =
            Run::new(AlgorithmKind::PreselectionGa, &p, &cfg, EvalBudget::new(2000), RngStream::new(4)).unwrap();
        let mut before: Vec<f64> = run.population().iter().map(|m| m.fitness()).collect();
        while run.step().unwrap() {
            let after: Vec<f64> = run.population().iter().map(|m| m.fitness()).collect();
            for (a, b) in after.iter().zip(&before) {
                assert!(!Direction::Minimize.is_better(*b, *a));
            }
            before = after;
        }
        assert_eq!(run.budget().used(), 2000);
    }

    #[test]
    fn odd_population_runs() {
        let p = problems::deb1();
        let cfg = AlgorithmConfig { population_size: 7, ..Default::default() };
        let r = preselection_ga(&p, &cfg, EvalBudget::new(100), RngStream::new(1)).unwrap();
        assert_eq!(r.final_population.capacity(), 7);
        assert_eq!(r.evals_used, 100);
    }
}
