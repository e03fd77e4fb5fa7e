//! Niching algorithms.
//!
//! Every algorithm runs on a [`Run`]: a fixed-size population, a seeded
//! random stream and an [`EvalBudget`]. A run ends the moment the budget is
//! spent, even in the middle of a generation; whatever state the population
//! is in at that point is the result.

mod crowding;
mod preselection;
mod sde;
mod sharing;
mod species;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ea::{evaluate, EvalBudget, GaOperators, Individual, Population, RngStream};
use crate::error::{Error, Result};
use crate::problems::BoundedProblem;

pub use crowding::{crowding_replacement, crowding_replacement_among, nearest_member};
pub use sharing::{shared_fitness, shared_fitnesses, sharing_denominator, sharing_scores, SHARING_EPSILON};
pub use species::{conserve_species_seeds, determine_species_seeds, partition_species, Conservation, SpeciesPartition};

/// The algorithms this crate provides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmKind {
    PreselectionGa,
    CrowdingGa,
    CrowdingDe,
    SharingGa,
    SharingDe,
    Scga,
    Sde,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 7] = [
        AlgorithmKind::PreselectionGa,
        AlgorithmKind::CrowdingGa,
        AlgorithmKind::CrowdingDe,
        AlgorithmKind::SharingGa,
        AlgorithmKind::SharingDe,
        AlgorithmKind::Scga,
        AlgorithmKind::Sde,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::PreselectionGa => "preselection_ga",
            AlgorithmKind::CrowdingGa => "crowding_ga",
            AlgorithmKind::CrowdingDe => "crowding_de",
            AlgorithmKind::SharingGa => "sharing_ga",
            AlgorithmKind::SharingDe => "sharing_de",
            AlgorithmKind::Scga => "scga",
            AlgorithmKind::Sde => "sde",
        }
    }

    pub fn is_de(self) -> bool {
        matches!(self, AlgorithmKind::CrowdingDe | AlgorithmKind::SharingDe | AlgorithmKind::Sde)
    }

    fn min_population(self) -> usize {
        if self.is_de() {
            4
        } else {
            2
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::config(format!("unknown algorithm `{s}`")))
    }
}

/// Per-algorithm parameters. Defaults follow the grating experiment setup:
/// population 50, species distance 1000, sharing radius 1000 with alpha 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AlgorithmConfig {
    pub population_size: usize,
    /// Crowding sample size; `None` compares against the whole population.
    pub crowding_factor: Option<usize>,
    pub species_distance: f64,
    pub sharing_radius: f64,
    pub sharing_alpha: f64,
    pub de_f: f64,
    pub de_cr: f64,
    pub ga: GaOperators,
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        Self {
            population_size: 50,
            crowding_factor: None,
            species_distance: 1000.0,
            sharing_radius: 1000.0,
            sharing_alpha: 1.0,
            de_f: 0.5,
            de_cr: 0.9,
            ga: GaOperators::default(),
        }
    }
}

impl AlgorithmConfig {
    pub fn crowding_factor(&self) -> usize {
        self.crowding_factor.unwrap_or(self.population_size)
    }

    pub fn validate(&self, kind: AlgorithmKind) -> Result<()> {
        let n = self.population_size;
        if n < kind.min_population() {
            return Err(Error::config(format!(
                "{kind} needs a population of at least {}, got {n}",
                kind.min_population()
            )));
        }
        let cf = self.crowding_factor();
        if cf == 0 || cf > n {
            return Err(Error::config(format!("crowding factor must lie in 1..={n}, got {cf}")));
        }
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.species_distance) {
            return Err(Error::config("species_distance must be positive"));
        }
        if !positive(self.sharing_radius) {
            return Err(Error::config("sharing_radius must be positive"));
        }
        if !positive(self.sharing_alpha) {
            return Err(Error::config("sharing_alpha must be positive"));
        }
        if !self.de_f.is_finite() {
            return Err(Error::config("de_f must be finite"));
        }
        if !(0.0..=1.0).contains(&self.de_cr) {
            return Err(Error::config("de_cr must lie in [0, 1]"));
        }
        self.ga.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub eval_count: u64,
    pub best_fitness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub final_population: Population,
    pub evals_used: u64,
    /// Best fitness of the current population after initialization and
    /// after every generation.
    pub trace: Vec<TracePoint>,
}

/// Mutable state of a single run.
pub struct RunContext<'p> {
    pub(crate) problem: &'p BoundedProblem,
    pub(crate) config: &'p AlgorithmConfig,
    pub(crate) budget: EvalBudget,
    pub(crate) rng: RngStream,
    pub(crate) population: Population,
    trace: Vec<TracePoint>,
}

impl RunContext<'_> {
    /// Evaluates a fresh genome against the run's budget.
    pub(crate) fn evaluate(&mut self, genome: Vec<f64>) -> Result<Individual> {
        let mut ind = Individual::new(genome);
        evaluate(&mut ind, self.problem, &mut self.budget)?;
        Ok(ind)
    }

    fn checkpoint(&mut self) {
        if let Some(best) = self.population.best(self.problem.direction()) {
            let point = TracePoint { eval_count: self.budget.used(), best_fitness: best.fitness() };
            if self.trace.last() != Some(&point) {
                self.trace.push(point);
            }
        }
    }
}

trait Generation {
    fn generation(&mut self, ctx: &mut RunContext<'_>) -> Result<()>;
}

fn generation_for(kind: AlgorithmKind) -> Box<dyn Generation + Send> {
    match kind {
        AlgorithmKind::PreselectionGa => Box::new(preselection::PreselectionGa),
        AlgorithmKind::CrowdingGa => Box::new(crowding::CrowdingGa),
        AlgorithmKind::CrowdingDe => Box::new(crowding::CrowdingDe),
        AlgorithmKind::SharingGa => Box::new(sharing::SharingGa),
        AlgorithmKind::SharingDe => Box::new(sharing::SharingDe),
        AlgorithmKind::Scga => Box::new(species::Scga),
        AlgorithmKind::Sde => Box::new(sde::Sde),
    }
}

/// A run that can be advanced one generation at a time.
pub struct Run<'p> {
    kind: AlgorithmKind,
    ctx: RunContext<'p>,
    algorithm: Box<dyn Generation + Send>,
    finished: bool,
}

impl<'p> Run<'p> {
    /// Samples the initial population and evaluates it in order until the
    /// budget runs out. Members past that point stay unevaluated.
    pub fn new(
        kind: AlgorithmKind,
        problem: &'p BoundedProblem,
        config: &'p AlgorithmConfig,
        budget: EvalBudget,
        mut rng: RngStream,
    ) -> Result<Self> {
        config.validate(kind)?;
        let genomes: Vec<Vec<f64>> = (0..config.population_size).map(|_| problem.bounds().sample(&mut rng)).collect();
        let mut ctx =
            RunContext { problem, config, budget, rng, population: Population::new(Vec::new()), trace: Vec::new() };
        let mut members = Vec::with_capacity(genomes.len());
        let mut finished = false;
        for g in genomes {
            let mut ind = Individual::new(g);
            if !finished {
                match evaluate(&mut ind, problem, &mut ctx.budget) {
                    Ok(()) => {}
                    Err(e) if e.is_budget_exhausted() => finished = true,
                    Err(e) => return Err(e),
                }
            }
            members.push(ind);
        }
        ctx.population = Population::new(members);
        ctx.checkpoint();
        let finished = finished || ctx.budget.is_exhausted();
        Ok(Self { kind, ctx, algorithm: generation_for(kind), finished })
    }

    pub fn kind(&self) -> AlgorithmKind {
        self.kind
    }

    pub fn population(&self) -> &Population {
        &self.ctx.population
    }

    pub fn budget(&self) -> &EvalBudget {
        &self.ctx.budget
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    /// Runs one generation. Returns `false` once the budget is spent; the
    /// generation that spends it may be partial.
    pub fn step(&mut self) -> Result<bool> {
        if self.finished {
            return Ok(false);
        }
        let outcome = self.algorithm.generation(&mut self.ctx);
        self.ctx.checkpoint();
        match outcome {
            Ok(()) if !self.ctx.budget.is_exhausted() => Ok(true),
            Ok(()) => {
                self.finished = true;
                Ok(false)
            }
            Err(e) if e.is_budget_exhausted() => {
                self.finished = true;
                Ok(false)
            }
            Err(e) => Err(e),
        }
    }

    pub fn run_to_completion(mut self) -> Result<RunResult> {
        while self.step()? {}
        Ok(self.into_result())
    }

    pub fn into_result(self) -> RunResult {
        RunResult { final_population: self.ctx.population, evals_used: self.ctx.budget.used(), trace: self.ctx.trace }
    }
}

/// Runs `kind` until `budget` is exhausted.
pub fn run(
    kind: AlgorithmKind,
    problem: &BoundedProblem,
    config: &AlgorithmConfig,
    budget: EvalBudget,
    rng: RngStream,
) -> Result<RunResult> {
    Run::new(kind, problem, config, budget, rng)?.run_to_completion()
}

macro_rules! entry_points {
    ($($(#[$doc:meta])* $name:ident => $kind:ident;)*) => {$(
        $(#[$doc])*
        pub fn $name(
            problem: &BoundedProblem,
            config: &AlgorithmConfig,
            budget: EvalBudget,
            rng: RngStream,
        ) -> Result<RunResult> {
            run(AlgorithmKind::$kind, problem, config, budget, rng)
        }
    )*};
}

entry_points! {
    /// Children compete with their own parents; a child replaces its parent
    /// only when strictly better.
    preselection_ga => PreselectionGa;
    /// Tournament GA whose children replace the nearest of `cf` sampled
    /// members when strictly better.
    crowding_ga => CrowdingGa;
    /// DE/rand/1/bin where each trial competes with its nearest neighbour.
    crowding_de => CrowdingDe;
    /// Generational GA selecting on shared fitness.
    sharing_ga => SharingGa;
    /// DE whose target/trial survivor choice uses shared fitness.
    sharing_de => SharingDe;
    /// Species conserving GA.
    scga => Scga;
    /// Species-partitioned DE.
    sde => Sde;
}
