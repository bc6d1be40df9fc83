use alloc::vec::Vec;

use super::pick;
use crate::{HeuristicKind, HyperHeuristic, ProblemDomain, Result, RunRng};

const INCUMBENT: usize = 0;
const PERTURBED: usize = 1;
const SCRATCH: usize = 2;
const BEST: usize = 3;

/// Uniform perturbation followed by the best of all local searches, with
/// greedy acceptance.
#[derive(Debug, Default, Clone)]
pub struct IteratedLocalSearch {
    perturbations: Vec<usize>,
}

impl IteratedLocalSearch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Heuristic ids drawn for perturbation during the last run.
    pub fn perturbation_log(&self) -> &[usize] {
        &self.perturbations
    }
}

/// Tries every local search on `from`; returns the slot and value of the best
/// result, or `None` when the budget ran out first.
fn local_search(domain: &mut dyn ProblemDomain, searches: &[usize], from: usize) -> Result<Option<(usize, f64)>> {
    let mut best = (from, domain.get_function_value(from)?);
    for &h in searches {
        if domain.has_expired() {
            return Ok(None);
        }
        let value = domain.apply_heuristic(h, from, SCRATCH)?;
        if value < best.1 {
            domain.copy_solution(SCRATCH, BEST)?;
            best = (BEST, value);
        }
    }
    Ok(Some(best))
}

impl HyperHeuristic for IteratedLocalSearch {
    fn name(&self) -> &'static str {
        "ils"
    }

    fn solve(&mut self, domain: &mut dyn ProblemDomain, rng: &mut RunRng) -> Result<()> {
        self.perturbations.clear();
        let mut pool = domain.heuristics_of_type(HeuristicKind::Mutation);
        pool.extend(domain.heuristics_of_type(HeuristicKind::RuinRecreate));
        let searches = domain.heuristics_of_type(HeuristicKind::LocalSearch);
        if searches.is_empty() {
            log::warn!("{}: no local search heuristics, using perturbation with greedy acceptance", domain.domain_id());
        }
        domain.set_memory_size(4);
        if domain.has_expired() {
            return Ok(());
        }
        domain.initialise_solution(PERTURBED)?;
        let Some((slot, _)) = local_search(domain, &searches, PERTURBED)? else {
            return Ok(());
        };
        domain.copy_solution(slot, INCUMBENT)?;
        let mut incumbent = domain.get_function_value(INCUMBENT)?;
        while !domain.has_expired() {
            let Some(h) = pick(&pool, rng) else {
                break;
            };
            self.perturbations.push(h);
            domain.apply_heuristic(h, INCUMBENT, PERTURBED)?;
            let Some((slot, value)) = local_search(domain, &searches, PERTURBED)? else {
                break;
            };
            if value < incumbent {
                domain.copy_solution(slot, INCUMBENT)?;
                incumbent = value;
            }
        }
        Ok(())
    }
}
