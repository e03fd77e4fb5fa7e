use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use niching::algorithms::{
    self, conserve_species_seeds, crowding_replacement, determine_species_seeds, shared_fitness, shared_fitnesses,
    sharing_scores, AlgorithmConfig, AlgorithmKind, Run,
};
use niching::ea::{Direction, EvalBudget, Individual, Population, RngStream};
use niching::metrics::peak_ratio;
use niching::problems;
use niching::Error;

fn ind(g: &[f64], f: f64) -> Individual {
    Individual::evaluated(g.to_vec(), f, 0)
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0)
}

#[test]
fn crowding_replaces_nearest_when_better() {
    let mut pop = Population::new(vec![ind(&[0.0, 0.0], 1.0), ind(&[1.0, 1.0], 2.0)]);
    let got = crowding_replacement(ind(&[0.1, 0.1], 3.0), &mut pop, 2, &mut rng(), Direction::Maximize);
    assert_eq!(got, Some(0));
    assert_eq!(pop[0].genome, vec![0.1, 0.1]);

    let before = pop.clone();
    let got = crowding_replacement(ind(&[0.9, 0.9], 1.0), &mut pop, 2, &mut rng(), Direction::Maximize);
    assert_eq!((got, &pop), (None, &before));
}

#[test]
fn crowding_factor_one_compares_a_single_member() {
    let members: Vec<Individual> = (0..10).map(|i| ind(&[i as f64], i as f64)).collect();
    for seed in 0..50 {
        let mut pop = Population::new(members.clone());
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        // best possible child: replaces whichever member was sampled
        let hit = crowding_replacement(ind(&[4.5], -1.0), &mut pop, 1, &mut r, Direction::Minimize).unwrap();
        let changed: Vec<usize> = (0..10).filter(|&k| pop[k] != members[k]).collect();
        assert_eq!(changed, vec![hit]);
    }
}

#[test]
fn shared_fitness_examples() {
    assert_eq!(shared_fitness(0, &[ind(&[0.5], 7.0)], 1.0, 1.0), 7.0);
    let twins = [ind(&[1.0], 4.0), ind(&[1.0], 4.0)];
    assert_eq!(shared_fitness(0, &twins, 0.5, 1.0), 2.0);
    assert_eq!(shared_fitness(1, &twins, 0.5, 1.0), 2.0);

    let spread: Vec<Individual> = (0..5).map(|i| ind(&[i as f64 * 10.0], i as f64)).collect();
    let raw: Vec<f64> = spread.iter().map(Individual::fitness).collect();
    for dir in [Direction::Minimize, Direction::Maximize] {
        assert_eq!(shared_fitnesses(&spread, dir, 5.0, 1.0), sharing_scores(&raw, dir));
    }

    // huge radius: every denominator close to n, ordering preserved
    let shared = shared_fitnesses(&spread, Direction::Maximize, 1e9, 1.0);
    for (k, s) in shared.iter().enumerate() {
        assert!((s - raw[k] / 5.0).abs() < 1e-6);
    }
}

#[test]
fn species_seed_examples() {
    let pop = [ind(&[0.0], 5.0), ind(&[0.2], 4.0), ind(&[1.0], 3.0)];
    assert_eq!(determine_species_seeds(&pop, 0.6, Direction::Maximize), vec![0, 2]);
    assert_eq!(determine_species_seeds(&pop, 10.0, Direction::Maximize), vec![0]);
    assert_eq!(determine_species_seeds(&pop, 0.0, Direction::Minimize), vec![2, 1, 0]);
}

#[test]
fn conservation_examples() {
    let dir = Direction::Maximize;

    let pop = Population::new(vec![ind(&[0.0], 5.0), ind(&[0.2], 1.0), ind(&[1.0], 3.0)]);
    let seeds = vec![pop[0].clone(), pop[2].clone()];
    let mut same = pop.clone();
    let c = conserve_species_seeds(&mut same, &seeds, 0.6, dir);
    assert_eq!(same, pop);
    assert_eq!((c.slots, c.overflow), (vec![Some(0), Some(2)], 0));

    // the species around 5.0 is empty: the global worst takes the seed
    let mut moved = Population::new(vec![ind(&[1.0], 3.0), ind(&[1.1], 0.5), ind(&[2.0], 2.0)]);
    let c = conserve_species_seeds(&mut moved, &[ind(&[5.0], 9.0)], 0.6, dir);
    assert_eq!(c.slots, vec![Some(1)]);
    assert_eq!(moved[1].genome, vec![5.0]);

    let mut clones = Population::new(vec![ind(&[0.0], 1.0); 4]);
    conserve_species_seeds(&mut clones, &[ind(&[0.1], 2.0)], 1.0, dir);
    assert_eq!(clones.iter().filter(|m| m.genome == vec![0.1]).count(), 1);
    assert_eq!(clones.iter().filter(|m| m.genome == vec![0.0]).count(), 3);

    let mut small = Population::new(vec![ind(&[0.0], 1.0), ind(&[1.0], 1.0)]);
    let seeds: Vec<Individual> = (0..4).map(|i| ind(&[10.0 + i as f64], 9.0)).collect();
    let c = conserve_species_seeds(&mut small, &seeds, 0.5, dir);
    assert_eq!(c.overflow, 2);
    assert_eq!(c.slots.iter().filter(|s| s.is_some()).count(), 2);
}

#[test]
fn crowding_ga_keeps_several_deb1_peaks() {
    let problem = problems::deb1();
    let config = AlgorithmConfig::default();
    let hits = (0..50)
        .filter(|&seed| {
            let r = algorithms::crowding_ga(&problem, &config, EvalBudget::new(10_000), RngStream::new(seed)).unwrap();
            let pr = peak_ratio(&r.final_population, problem.known_peaks(), 0.1).unwrap();
            pr * 5.0 >= 2.0
        })
        .count();
    assert!(hits >= 45, "{hits}/50 runs span at least two peaks");
}

#[test]
fn de_variants_need_four_members() {
    let problem = problems::himmelblau();
    let config = AlgorithmConfig { population_size: 3, ..Default::default() };
    for kind in AlgorithmKind::ALL {
        let r = algorithms::run(kind, &problem, &config, EvalBudget::new(100), RngStream::new(1));
        if kind.is_de() {
            assert!(matches!(r, Err(Error::Config(_))), "{kind}");
        } else {
            assert!(r.is_ok(), "{kind}");
        }
    }
}

#[test]
fn identical_seeds_give_identical_runs() {
    let problem = problems::six_hump_camel();
    let config = AlgorithmConfig { population_size: 20, species_distance: 0.5, ..Default::default() };
    for kind in AlgorithmKind::ALL {
        let go = |seed| algorithms::run(kind, &problem, &config, EvalBudget::new(2_000), RngStream::new(seed)).unwrap();
        assert_eq!(go(4), go(4), "{kind}");
        assert_ne!(go(4).final_population, go(5).final_population, "{kind}");
    }
}

#[test]
fn zero_generation_budget_leaves_the_random_population() {
    let problem = problems::deb1();
    let config = AlgorithmConfig::default();
    for kind in AlgorithmKind::ALL {
        let r = algorithms::run(kind, &problem, &config, EvalBudget::new(50), RngStream::new(2)).unwrap();
        let init = Run::new(kind, &problem, &config, EvalBudget::new(50), RngStream::new(2)).unwrap();
        assert_eq!(&r.final_population, init.population());
        assert_eq!(r.trace.len(), 1);
    }
}

#[test]
fn scga_with_a_huge_species_distance_has_one_seed_and_keeps_the_best() {
    let problem = problems::himmelblau();
    let config = AlgorithmConfig { species_distance: 1000.0, ..Default::default() };
    let mut run = Run::new(AlgorithmKind::Scga, &problem, &config, EvalBudget::new(5_000), RngStream::new(3)).unwrap();
    let dir = problem.direction();
    loop {
        let seeds = determine_species_seeds(run.population(), config.species_distance, dir);
        assert_eq!(seeds.len(), 1);
        let best = run.population()[seeds[0]].clone();
        if !run.step().unwrap() {
            break;
        }
        assert!(run.population().iter().any(|m| m.genome == best.genome));
    }
}

#[test]
fn sde_singletons_only_change_for_better_trials() {
    let problem = problems::himmelblau();
    let config = AlgorithmConfig { species_distance: 1e-9, ..Default::default() };
    let mut run = Run::new(AlgorithmKind::Sde, &problem, &config, EvalBudget::new(3_000), RngStream::new(6)).unwrap();
    let mut generations = 0;
    loop {
        let before = run.population().clone();
        let more = run.step().unwrap();
        for (old, new) in before.iter().zip(run.population().iter()) {
            if old != new {
                assert!(new.fitness() < old.fitness());
            }
        }
        generations += 1;
        if !more {
            break;
        }
    }
    assert!(generations > 10);
}

#[test]
fn elitist_algorithms_never_lose_the_best() {
    let problem = problems::branin();
    let config = AlgorithmConfig::default();
    for kind in [AlgorithmKind::CrowdingDe, AlgorithmKind::Sde, AlgorithmKind::Scga, AlgorithmKind::PreselectionGa] {
        let r = algorithms::run(kind, &problem, &config, EvalBudget::new(3_000), RngStream::new(8)).unwrap();
        assert!(r.trace.windows(2).all(|w| w[1].best_fitness <= w[0].best_fitness), "{kind}");
        assert_eq!(r.trace.last().unwrap().eval_count, 3_000);
    }
}

#[test]
fn algorithm_names_parse() {
    for kind in AlgorithmKind::ALL {
        assert_eq!(kind.name().parse::<AlgorithmKind>().unwrap(), kind);
        assert_eq!(kind.to_string(), kind.name());
    }
    assert!("foo".parse::<AlgorithmKind>().is_err());
}
