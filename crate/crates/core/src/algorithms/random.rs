use rand::Rng;

use crate::{HyperHeuristic, ProblemDomain, Result, RunRng};

/// Uniform heuristic choice; improvements are always kept, anything else
/// with probability one half.
#[derive(Debug, Default, Clone)]
pub struct RandomSelection;

impl RandomSelection {
    pub fn new() -> Self {
        Self
    }
}

impl HyperHeuristic for RandomSelection {
    fn name(&self) -> &'static str {
        "random"
    }

    fn solve(&mut self, domain: &mut dyn ProblemDomain, rng: &mut RunRng) -> Result<()> {
        let n = domain.number_of_heuristics();
        let arity: alloc::vec::Vec<u8> = domain.heuristics().iter().map(|d| d.arity()).collect();
        let mut current = f64::INFINITY;
        domain.set_memory_size(2);
        if domain.has_expired() {
            return Ok(());
        }
        domain.initialise_solution(0)?;
        while !domain.has_expired() && n > 0 {
            let h = rng.gen_range(0..n);
            let value = if arity[h] == 2 {
                domain.apply_heuristic2(h, 0, 0, 1)?
            } else {
                domain.apply_heuristic(h, 0, 1)?
            };
            let delta = current - value;
            if delta > 0.0 || rng.gen_bool(0.5) {
                domain.copy_solution(1, 0)?;
                current = value;
            }
        }
        Ok(())
    }
}
