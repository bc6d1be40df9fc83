//! Permutation flow shop, minimising makespan.

mod heuristics;
mod insertion;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::domain::{ApplyContext, Problem};
use crate::{Error, HeuristicDescriptor, HeuristicKind, Result, RunRng};

pub use insertion::{best_insertion, insertion_makespans, neh};

pub const DOMAIN_ID: &str = "flowshop";

pub const HEURISTICS: &[HeuristicDescriptor] = &[
    HeuristicDescriptor::new(0, HeuristicKind::Mutation, "reinsert"),
    HeuristicDescriptor::new(1, HeuristicKind::Mutation, "swap"),
    HeuristicDescriptor::new(2, HeuristicKind::Mutation, "shuffle"),
    HeuristicDescriptor::new(3, HeuristicKind::Mutation, "neh-current-rank"),
    HeuristicDescriptor::new(4, HeuristicKind::Mutation, "shuffle-subset"),
    HeuristicDescriptor::new(5, HeuristicKind::RuinRecreate, "iterated-greedy"),
    HeuristicDescriptor::new(6, HeuristicKind::RuinRecreate, "iterated-greedy-beam"),
    HeuristicDescriptor::new(7, HeuristicKind::LocalSearch, "steepest-reinsertion"),
    HeuristicDescriptor::new(8, HeuristicKind::LocalSearch, "first-improvement-reinsertion"),
    HeuristicDescriptor::new(9, HeuristicKind::LocalSearch, "random-best-pass"),
    HeuristicDescriptor::new(10, HeuristicKind::LocalSearch, "random-first-pass"),
    HeuristicDescriptor::new(11, HeuristicKind::Crossover, "ox"),
    HeuristicDescriptor::new(12, HeuristicKind::Crossover, "pmx"),
    HeuristicDescriptor::new(13, HeuristicKind::Crossover, "ppx"),
    HeuristicDescriptor::new(14, HeuristicKind::Crossover, "one-point"),
];

/// Processing times stored job-major: `p(job, machine)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowShopInstance {
    id: String,
    jobs: usize,
    machines: usize,
    times: Vec<u64>,
}

impl FlowShopInstance {
    pub fn new(id: impl Into<String>, jobs: usize, machines: usize, times: Vec<u64>) -> Result<Self> {
        if jobs == 0 || machines == 0 {
            return Err(Error::InvalidInstance("need at least one job and one machine".into()));
        }
        if times.len() != jobs * machines {
            return Err(Error::InvalidInstance(format!(
                "expected {} processing times, found {}",
                jobs * machines,
                times.len()
            )));
        }
        Ok(Self {
            id: id.into(),
            jobs,
            machines,
            times,
        })
    }

    /// Uniform integer times in `[1, pmax]`.
    pub fn generate(id: impl Into<String>, jobs: usize, machines: usize, pmax: u64, rng: &mut RunRng) -> Result<Self> {
        if pmax == 0 {
            return Err(Error::InvalidInstance("pmax must be positive".into()));
        }
        let times = (0..jobs * machines).map(|_| rng.gen_range(1..=pmax)).collect();
        Self::new(id, jobs, machines, times)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    #[inline]
    pub fn p(&self, job: u32, machine: usize) -> u64 {
        self.times[job as usize * self.machines + machine]
    }

    pub fn row(&self, job: u32) -> &[u64] {
        let s = job as usize * self.machines;
        &self.times[s..s + self.machines]
    }
}

/// Makespan by the completion-time recurrence with a rolling row.
pub fn makespan(inst: &FlowShopInstance, order: &[u32]) -> u64 {
    let mut c = alloc::vec![0u64; inst.machines];
    for &job in order {
        let row = inst.row(job);
        let mut prev = 0;
        for (cj, &p) in c.iter_mut().zip(row) {
            prev = prev.max(*cj) + p;
            *cj = prev;
        }
    }
    c[inst.machines - 1]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobPermutation {
    order: Vec<u32>,
    makespan: u64,
}

impl JobPermutation {
    pub fn new(inst: &FlowShopInstance, order: Vec<u32>) -> Self {
        let makespan = makespan(inst, &order);
        Self { order, makespan }
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn makespan(&self) -> u64 {
        self.makespan
    }

    pub fn is_permutation(&self, n: usize) -> bool {
        let mut seen = alloc::vec![false; n];
        self.order.len() == n
            && self
                .order
                .iter()
                .all(|&j| (j as usize) < n && !core::mem::replace(&mut seen[j as usize], true))
    }
}

#[derive(Debug, Clone)]
pub struct FlowShop {
    instance: Arc<FlowShopInstance>,
}

impl FlowShop {
    pub fn new(instance: Arc<FlowShopInstance>) -> Self {
        Self { instance }
    }

    pub fn instance(&self) -> &FlowShopInstance {
        &self.instance
    }
}

impl Problem for FlowShop {
    type Solution = JobPermutation;

    fn domain_id(&self) -> &'static str {
        DOMAIN_ID
    }

    fn instance_id(&self) -> &str {
        self.instance.id()
    }

    fn heuristics(&self) -> &'static [HeuristicDescriptor] {
        HEURISTICS
    }

    fn initialise(&self, rng: &mut RunRng) -> JobPermutation {
        let mut rank: Vec<u32> = (0..self.instance.jobs() as u32).collect();
        rank.shuffle(rng);
        neh(&self.instance, &rank)
    }

    fn objective(&self, s: &JobPermutation) -> f64 {
        s.makespan as f64
    }

    fn apply(&self, h: usize, s: &mut JobPermutation, ctx: &mut ApplyContext<'_>) {
        let inst = &*self.instance;
        let alpha = ctx.params.intensity_of_mutation();
        let beta = ctx.params.depth_of_search();
        let rng = &mut *ctx.rng;
        let order = &mut s.order;
        match h {
            0 => heuristics::reinsert(order, rng),
            1 => heuristics::swap(order, rng),
            2 => order.shuffle(rng),
            3 => *order = neh(inst, order).order,
            4 => heuristics::shuffle_subset(order, alpha, rng),
            5 => heuristics::iterated_greedy(inst, order, alpha, rng),
            6 => heuristics::iterated_greedy_beam(inst, order, alpha, beta, rng),
            7 => heuristics::steepest(inst, order),
            8 => heuristics::first_improvement(inst, order),
            9 => heuristics::random_pass(inst, order, beta, true, rng),
            10 => heuristics::random_pass(inst, order, beta, false, rng),
            _ => unreachable!("heuristic {h} is not unary"),
        }
        s.makespan = makespan(inst, &s.order);
    }

    fn crossover(&self, h: usize, a: &JobPermutation, b: &JobPermutation, ctx: &mut ApplyContext<'_>) -> JobPermutation {
        let (x, y) = (&a.order[..], &b.order[..]);
        let rng = &mut *ctx.rng;
        let order = match h {
            11 => heuristics::ox(x, y, rng),
            12 => heuristics::pmx(x, y, rng),
            13 => heuristics::ppx(x, y, rng),
            14 => heuristics::one_point(x, y, rng),
            _ => unreachable!("heuristic {h} is not a crossover"),
        };
        JobPermutation::new(&self.instance, order)
    }
}

#[cfg(test)]
mod tests;
