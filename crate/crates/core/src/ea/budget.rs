use crate::error::{Error, Result};
use crate::problems::BoundedProblem;

use super::Individual;

/// Counts objective evaluations against a hard cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalBudget {
    max_evals: u64,
    used: u64,
}

impl EvalBudget {
    pub fn new(max_evals: u64) -> Self {
        Self { max_evals, used: 0 }
    }

    pub fn max_evals(&self) -> u64 {
        self.max_evals
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.max_evals - self.used
    }

    pub fn is_exhausted(&self) -> bool {
        self.used >= self.max_evals
    }

    /// Claims one evaluation and returns its index.
    pub fn consume(&mut self) -> Result<u64> {
        if self.is_exhausted() {
            return Err(Error::BudgetExhausted { max_evals: self.max_evals });
        }
        let tick = self.used;
        self.used += 1;
        Ok(tick)
    }
}

/// Evaluates `ind` on `problem`, charging exactly one tick to `budget`.
///
/// The objective is not called once the budget is exhausted.
pub fn evaluate(ind: &mut Individual, problem: &BoundedProblem, budget: &mut EvalBudget) -> Result<()> {
    problem.bounds().check_dim(&ind.genome)?;
    let tick = budget.consume()?;
    let f = problem.objective(&ind.genome);
    ind.set_evaluation(f, tick);
    Ok(())
}
