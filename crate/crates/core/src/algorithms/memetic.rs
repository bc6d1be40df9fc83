use alloc::vec::Vec;

use rand::Rng;

use super::pick;
use crate::{Error, HeuristicKind, HyperHeuristic, ProblemDomain, Result, RunRng};

pub const POPULATION: usize = 10;
const OFFSPRING: usize = POPULATION;
const MUTATION_RATE: f64 = 0.1;

/// Steady-state memetic algorithm over a population of ten.
#[derive(Debug, Default, Clone)]
pub struct Memetic {
    generations: u64,
    mutations: u64,
}

impl Memetic {
    pub fn new() -> Self {
        Self::default()
    }

    /// Offspring produced in the last run.
    pub fn generations(&self) -> u64 {
        self.generations
    }

    /// Offspring that were mutated in the last run.
    pub fn mutations(&self) -> u64 {
        self.mutations
    }
}

/// Binary tournament over two distinct slots; the first draw wins ties.
pub(crate) fn tournament(values: &[f64], rng: &mut RunRng) -> usize {
    let a = rng.gen_range(0..values.len());
    let mut b = rng.gen_range(0..values.len() - 1);
    if b >= a {
        b += 1;
    }
    if values[b] < values[a] {
        b
    } else {
        a
    }
}

impl HyperHeuristic for Memetic {
    fn name(&self) -> &'static str {
        "ma"
    }

    fn solve(&mut self, domain: &mut dyn ProblemDomain, rng: &mut RunRng) -> Result<()> {
        self.generations = 0;
        self.mutations = 0;
        let crossovers = domain.heuristics_of_type(HeuristicKind::Crossover);
        if crossovers.is_empty() {
            return Err(Error::UnsupportedDomain(alloc::format!(
                "{} offers no crossover heuristic",
                domain.domain_id()
            )));
        }
        let mutations = domain.heuristics_of_type(HeuristicKind::Mutation);
        let searches = domain.heuristics_of_type(HeuristicKind::LocalSearch);
        let ruins = domain.heuristics_of_type(HeuristicKind::RuinRecreate);
        domain.set_memory_size(POPULATION + 1);
        let mut values = Vec::with_capacity(POPULATION);
        for slot in 0..POPULATION {
            if domain.has_expired() {
                return Ok(());
            }
            values.push(domain.initialise_solution(slot)?);
        }
        while !domain.has_expired() {
            let s1 = tournament(&values, rng);
            let s2 = tournament(&values, rng);
            let h = pick(&crossovers, rng).expect("checked non-empty");
            let mut child = domain.apply_heuristic2(h, s1, s2, OFFSPRING)?;
            self.generations += 1;
            if rng.gen_bool(MUTATION_RATE) {
                self.mutations += 1;
                if let Some(h) = pick(&mutations, rng) {
                    if domain.has_expired() {
                        break;
                    }
                    child = domain.apply_heuristic(h, OFFSPRING, OFFSPRING)?;
                }
            }
            let pool = if rng.gen_bool(0.5) { &searches } else { &ruins };
            if let Some(h) = pick(pool, rng) {
                if domain.has_expired() {
                    break;
                }
                child = domain.apply_heuristic(h, OFFSPRING, OFFSPRING)?;
            }
            let worse = if values[s1] > values[s2] { s1 } else { s2 };
            if child <= values[worse] {
                domain.copy_solution(OFFSPRING, worse)?;
                values[worse] = child;
            }
        }
        Ok(())
    }
}
