//! The domain barrier.
//!
//! [`Problem`] is what a domain author implements: a solution type, an
//! objective, and an operator catalog. [`Domain`] wraps a problem with the
//! bookkeeping shared by all domains (memory, evaluation counter, best value,
//! fitness trace, budget) and exposes it through the object-safe
//! [`ProblemDomain`] trait that search strategies program against.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::rng::{self, RunRng};
use crate::{
    Clock, Error, FitnessTrace, HeuristicDescriptor, HeuristicKind, Result, RunBudget,
    SearchParameters, SolutionMemory,
};

pub const DEFAULT_MEMORY_SIZE: usize = 2;

/// Per-call environment handed to domain operators.
pub struct ApplyContext<'a> {
    pub params: SearchParameters,
    pub rng: &'a mut RunRng,
    /// Present only for wall-clock runs.
    pub clock: Option<&'a dyn Clock>,
}

/// A problem domain: instance data plus its operators.
pub trait Problem {
    type Solution: Clone;

    fn domain_id(&self) -> &'static str;

    fn instance_id(&self) -> &str;

    /// Operator catalog; ids must be contiguous from 0.
    fn heuristics(&self) -> &'static [HeuristicDescriptor];

    fn initialise(&self, rng: &mut RunRng) -> Self::Solution;

    fn objective(&self, solution: &Self::Solution) -> f64;

    /// Applies unary heuristic `h` in place.
    fn apply(&self, h: usize, solution: &mut Self::Solution, ctx: &mut ApplyContext<'_>);

    /// Applies binary heuristic `h` to two parents, returning the offspring.
    fn crossover(
        &self,
        h: usize,
        first: &Self::Solution,
        second: &Self::Solution,
        ctx: &mut ApplyContext<'_>,
    ) -> Self::Solution;
}

/// What a search strategy sees of a problem domain.
pub trait ProblemDomain {
    fn domain_id(&self) -> &str;
    fn instance_id(&self) -> &str;

    fn heuristics(&self) -> &[HeuristicDescriptor];

    fn number_of_heuristics(&self) -> usize {
        self.heuristics().len()
    }

    fn heuristics_of_type(&self, kind: HeuristicKind) -> Vec<usize> {
        self.heuristics()
            .iter()
            .filter(|d| d.kind == kind)
            .map(|d| d.id)
            .collect()
    }

    fn parameters(&self) -> SearchParameters;
    fn set_parameters(&mut self, params: SearchParameters);

    fn memory_size(&self) -> usize;
    fn set_memory_size(&mut self, size: usize);

    fn initialise_solution(&mut self, slot: usize) -> Result<f64>;
    fn apply_heuristic(&mut self, h: usize, src: usize, dst: usize) -> Result<f64>;
    fn apply_heuristic2(&mut self, h: usize, src1: usize, src2: usize, dst: usize)
        -> Result<f64>;
    fn copy_solution(&mut self, src: usize, dst: usize) -> Result<()>;
    fn get_function_value(&self, slot: usize) -> Result<f64>;

    /// Best objective value returned across the barrier so far, or
    /// `f64::INFINITY` before the first evaluation.
    fn get_best_solution_value(&self) -> f64;

    fn evaluations(&self) -> u64;

    /// Prepares a fresh run: clears memory and bookkeeping, reseeds the
    /// domain stream from `seed`.
    fn begin_run(&mut self, budget: RunBudget, seed: u64, clock: Option<Arc<dyn Clock>>)
        -> Result<()>;

    /// Refreshes the clock reading and reports whether the budget is spent.
    fn has_expired(&mut self) -> bool;

    /// Current budget state, if a run is in progress.
    fn budget(&self) -> Option<RunBudget>;

    /// Budget consumed so far, in the budget's unit (evaluations without a
    /// budget).
    fn consumed(&self) -> u64;

    fn trace(&self) -> &FitnessTrace;

    /// Appends the terminal trace point.
    fn close_trace(&mut self);
}

/// Bookkeeping wrapper turning a [`Problem`] into a [`ProblemDomain`].
pub struct Domain<P: Problem> {
    problem: Option<P>,
    memory: SolutionMemory<P::Solution>,
    params: SearchParameters,
    rng: RunRng,
    budget: Option<RunBudget>,
    clock: Option<Arc<dyn Clock>>,
    evaluations: u64,
    best: f64,
    trace: FitnessTrace,
}

impl<P: Problem> Domain<P> {
    /// Creates an empty domain; an instance must be loaded before use.
    pub fn new(seed: u64) -> Self {
        Self {
            problem: None,
            memory: SolutionMemory::new(DEFAULT_MEMORY_SIZE),
            params: SearchParameters::default(),
            rng: rng::domain_stream(seed),
            budget: None,
            clock: None,
            evaluations: 0,
            best: f64::INFINITY,
            trace: FitnessTrace::new(),
        }
    }

    pub fn with_instance(problem: P, seed: u64) -> Self {
        let mut d = Self::new(seed);
        d.load_instance(problem);
        d
    }

    /// Loads an instance, discarding any stored solutions.
    pub fn load_instance(&mut self, problem: P) {
        self.problem = Some(problem);
        self.memory.clear();
        self.reset_bookkeeping();
    }

    pub fn problem(&self) -> Option<&P> {
        self.problem.as_ref()
    }

    /// Read access to a stored solution.
    pub fn solution(&self, slot: usize) -> Result<&P::Solution> {
        self.memory.get(slot).map(|(s, _)| s)
    }

    /// Stores an externally built solution (counts as an evaluation).
    pub fn set_solution(&mut self, slot: usize, solution: P::Solution) -> Result<f64> {
        let problem = self.problem.as_ref().ok_or(Error::NoInstanceLoaded)?;
        self.memory.check_index(slot)?;
        let value = problem.objective(&solution);
        self.memory.set(slot, solution, value)?;
        self.record(value);
        Ok(value)
    }

    fn reset_bookkeeping(&mut self) {
        self.evaluations = 0;
        self.best = f64::INFINITY;
        self.trace.clear();
    }

    fn loaded(&self) -> Result<&P> {
        self.problem.as_ref().ok_or(Error::NoInstanceLoaded)
    }

    fn descriptor(&self, h: usize) -> Result<HeuristicDescriptor> {
        let hs = self.loaded()?.heuristics();
        hs.get(h).copied().ok_or(Error::HeuristicOutOfRange {
            index: h,
            count: hs.len(),
        })
    }

    fn record(&mut self, value: f64) {
        self.evaluations += 1;
        if let Some(b) = self.budget.as_mut() {
            b.record_evaluation();
            if let Some(c) = self.clock.as_ref() {
                b.observe_clock(c.elapsed_ms());
            }
        }
        if value < self.best {
            self.best = value;
            let consumed = self.consumed();
            self.trace.record(consumed, value);
        }
    }
}

impl<P: Problem> ProblemDomain for Domain<P> {
    fn domain_id(&self) -> &str {
        self.problem.as_ref().map_or("", |p| p.domain_id())
    }

    fn instance_id(&self) -> &str {
        self.problem.as_ref().map_or("", |p| p.instance_id())
    }

    fn heuristics(&self) -> &[HeuristicDescriptor] {
        self.problem.as_ref().map_or(&[], |p| p.heuristics())
    }

    fn parameters(&self) -> SearchParameters {
        self.params
    }

    fn set_parameters(&mut self, params: SearchParameters) {
        self.params = params;
    }

    fn memory_size(&self) -> usize {
        self.memory.size()
    }

    fn set_memory_size(&mut self, size: usize) {
        self.memory.resize(size);
    }

    fn initialise_solution(&mut self, slot: usize) -> Result<f64> {
        let problem = self.problem.as_ref().ok_or(Error::NoInstanceLoaded)?;
        self.memory.check_index(slot)?;
        let solution = problem.initialise(&mut self.rng);
        let value = problem.objective(&solution);
        self.memory.set(slot, solution, value)?;
        self.record(value);
        Ok(value)
    }

    fn apply_heuristic(&mut self, h: usize, src: usize, dst: usize) -> Result<f64> {
        let desc = self.descriptor(h)?;
        if desc.arity() != 1 {
            return Err(Error::WrongArity {
                heuristic: h,
                expected: desc.arity(),
                found: 1,
            });
        }
        self.memory.check_index(dst)?;
        let mut solution = self.memory.get(src)?.0.clone();
        let problem = self.problem.as_ref().ok_or(Error::NoInstanceLoaded)?;
        let mut ctx = ApplyContext {
            params: self.params,
            rng: &mut self.rng,
            clock: self.clock.as_deref(),
        };
        problem.apply(h, &mut solution, &mut ctx);
        let value = problem.objective(&solution);
        self.memory.set(dst, solution, value)?;
        self.record(value);
        Ok(value)
    }

    fn apply_heuristic2(
        &mut self,
        h: usize,
        src1: usize,
        src2: usize,
        dst: usize,
    ) -> Result<f64> {
        let desc = self.descriptor(h)?;
        if desc.arity() != 2 {
            return Err(Error::WrongArity {
                heuristic: h,
                expected: desc.arity(),
                found: 2,
            });
        }
        self.memory.check_index(dst)?;
        let first = self.memory.get(src1)?.0;
        let second = self.memory.get(src2)?.0;
        let problem = self.problem.as_ref().ok_or(Error::NoInstanceLoaded)?;
        let mut ctx = ApplyContext {
            params: self.params,
            rng: &mut self.rng,
            clock: self.clock.as_deref(),
        };
        let child = problem.crossover(h, first, second, &mut ctx);
        let value = problem.objective(&child);
        self.memory.set(dst, child, value)?;
        self.record(value);
        Ok(value)
    }

    fn copy_solution(&mut self, src: usize, dst: usize) -> Result<()> {
        self.loaded()?;
        self.memory.copy(src, dst)
    }

    fn get_function_value(&self, slot: usize) -> Result<f64> {
        self.loaded()?;
        self.memory.get(slot).map(|(_, v)| v)
    }

    fn get_best_solution_value(&self) -> f64 {
        self.best
    }

    fn evaluations(&self) -> u64 {
        self.evaluations
    }

    fn begin_run(
        &mut self,
        budget: RunBudget,
        seed: u64,
        clock: Option<Arc<dyn Clock>>,
    ) -> Result<()> {
        self.loaded()?;
        if matches!(budget.mode(), crate::BudgetMode::WallClock(_)) && clock.is_none() {
            return Err(Error::MissingClock);
        }
        self.rng = rng::domain_stream(seed);
        self.memory = SolutionMemory::new(DEFAULT_MEMORY_SIZE);
        self.budget = Some(budget);
        self.clock = clock;
        self.reset_bookkeeping();
        Ok(())
    }

    fn has_expired(&mut self) -> bool {
        match self.budget.as_mut() {
            Some(b) => {
                if let Some(c) = self.clock.as_ref() {
                    b.observe_clock(c.elapsed_ms());
                }
                b.has_expired()
            }
            None => false,
        }
    }

    fn budget(&self) -> Option<RunBudget> {
        self.budget
    }

    fn consumed(&self) -> u64 {
        self.budget.map_or(self.evaluations, |b| b.consumed())
    }

    fn trace(&self) -> &FitnessTrace {
        &self.trace
    }

    fn close_trace(&mut self) {
        let consumed = self.consumed();
        self.trace.close(consumed);
    }
}

/// Human-readable identifier helper shared by the domains.
pub(crate) fn default_instance_id(prefix: &str, dims: &[usize]) -> String {
    use core::fmt::Write;
    let mut s = String::from(prefix);
    for d in dims {
        let _ = write!(s, "-{d}");
    }
    s
}
