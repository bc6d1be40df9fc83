//! Reference search strategies. They see domains only through
//! [`ProblemDomain`](crate::ProblemDomain).

mod ils;
mod memetic;
mod random;
mod tsaa;

use alloc::boxed::Box;

use rand::seq::SliceRandom;

pub use ils::IteratedLocalSearch;
pub use memetic::Memetic;
pub use random::RandomSelection;
pub use tsaa::{learn, tenure_for, AcceptanceState, HeuristicScores, TabuList, TabuSearchAdaptive};

use crate::{HyperHeuristic, RunRng};

/// Identifiers accepted by [`by_name`].
pub const ALGORITHMS: &[&str] = &["random", "ils", "tsaa", "ma"];

pub fn by_name(name: &str) -> Option<Box<dyn HyperHeuristic>> {
    Some(match name {
        "random" => Box::new(RandomSelection::new()),
        "ils" => Box::new(IteratedLocalSearch::new()),
        "tsaa" => Box::new(TabuSearchAdaptive::new()),
        "ma" => Box::new(Memetic::new()),
        _ => return None,
    })
}

fn pick(pool: &[usize], rng: &mut RunRng) -> Option<usize> {
    pool.choose(rng).copied()
}
