//! Shared evolutionary machinery: representation, variation, selection,
//! random streams and the evaluation budget.

mod bounds;
mod budget;
mod individual;
mod operators;
mod rng;

pub use bounds::Bounds;
pub use budget::{evaluate, EvalBudget};
pub use individual::{Direction, Individual, Population};
pub use operators::{
    binary_tournament, binomial_crossover, blend_crossover, de_mutant, de_trial_from_donors, de_trial_vector,
    euclidean_distance, gaussian_mutation, tournament_index, GaOperators, DEFAULT_BLEND_ALPHA, DEFAULT_MUTATION_SIGMA,
};
pub use rng::RngStream;

pub(crate) use operators::distance;
