use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::rng::{self, RunRng};
use crate::{BudgetMode, Clock, Error, FitnessTrace, ProblemDomain, Result, RunBudget};

/// A search strategy operating purely through the domain barrier.
pub trait HyperHeuristic {
    /// Short identifier, e.g. `"ils"`.
    fn name(&self) -> &'static str;

    /// Runs the search until `domain.has_expired()`.
    fn solve(&mut self, domain: &mut dyn ProblemDomain, rng: &mut RunRng) -> Result<()>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub domain: String,
    pub instance: String,
    pub algorithm: String,
    pub seed: u64,
    pub budget: BudgetMode,
    pub best_value: f64,
    pub evaluations_used: u64,
    pub trace: FitnessTrace,
}

impl RunResult {
    /// Objective value of the first evaluation in the run.
    pub fn initial_value(&self) -> Option<f64> {
        self.trace.first()
    }
}

/// Runs `algorithm` on `domain` under `budget`.
///
/// With an `Evaluations` budget the result is a pure function of the
/// algorithm, the loaded instance, the budget and `seed`.
pub fn run(
    algorithm: &mut dyn HyperHeuristic,
    domain: &mut dyn ProblemDomain,
    budget: BudgetMode,
    seed: u64,
    clock: Option<Arc<dyn Clock>>,
) -> Result<RunResult> {
    let budget = RunBudget::new(budget)?;
    domain.begin_run(budget, seed, clock)?;
    let mut rng = rng::strategy_stream(seed);
    algorithm.solve(domain, &mut rng).map_err(|e| Error::RunFailed {
        algorithm: algorithm.name().to_string(),
        domain: domain.domain_id().to_string(),
        instance: domain.instance_id().to_string(),
        evaluations: domain.evaluations(),
        source: Box::new(e),
    })?;
    domain.close_trace();
    Ok(RunResult {
        domain: domain.domain_id().to_string(),
        instance: domain.instance_id().to_string(),
        algorithm: algorithm.name().to_string(),
        seed,
        budget: budget.mode(),
        best_value: domain.get_best_solution_value(),
        evaluations_used: domain.evaluations(),
        trace: domain.trace().clone(),
    })
}
