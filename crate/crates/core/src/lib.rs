//! Cross-domain heuristic search kernel.
//!
//! The crate is split along the domain barrier. Search strategies in
//! [`algorithms`] see only the object-safe [`ProblemDomain`] contract:
//! heuristic ids, objective values and memory slots. Everything problem
//! specific (solution encoding, objective, operator catalog) lives behind
//! that contract in [`domains`].
//!
//! The crate is `no_std` and needs only `alloc`. Wall-clock timing is
//! injected through the [`Clock`] trait; file formats and IO live in the
//! companion `xdhh` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algorithms;
pub mod analysis;
pub mod budget;
pub mod domain;
pub mod domains;
mod error;
pub mod heuristic;
pub mod memory;
pub mod params;
pub mod rng;
pub mod run;
pub mod trace;

pub use budget::{BudgetMode, Clock, RunBudget};
pub use domain::{ApplyContext, Domain, Problem, ProblemDomain};
pub use error::{Error, Result};
pub use heuristic::{HeuristicDescriptor, HeuristicKind};
pub use memory::SolutionMemory;
pub use params::SearchParameters;
pub use rng::RunRng;
pub use run::{run, HyperHeuristic, RunResult};
pub use trace::FitnessTrace;
