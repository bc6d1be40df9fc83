//! One-dimensional bin packing.
//!
//! The objective is `1 - (sum_i (fullness_i / C)^2) / n` over the `n` used
//! bins, which rewards nearly full bins and is zero only when every bin is
//! completely full.

mod heuristics;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::domain::{ApplyContext, Problem};
use crate::{Error, HeuristicDescriptor, HeuristicKind, Result, RunRng};

pub const DOMAIN_ID: &str = "binpacking";

pub const HEURISTICS: &[HeuristicDescriptor] = &[
    HeuristicDescriptor::new(0, HeuristicKind::Mutation, "swap-pieces"),
    HeuristicDescriptor::new(1, HeuristicKind::Mutation, "split-bin"),
    HeuristicDescriptor::new(2, HeuristicKind::Mutation, "repack-lowest"),
    HeuristicDescriptor::new(3, HeuristicKind::RuinRecreate, "ruin-highest"),
    HeuristicDescriptor::new(4, HeuristicKind::RuinRecreate, "ruin-lowest"),
    HeuristicDescriptor::new(5, HeuristicKind::LocalSearch, "swap-descent"),
    HeuristicDescriptor::new(6, HeuristicKind::LocalSearch, "exchange-lowest"),
    HeuristicDescriptor::new(7, HeuristicKind::Crossover, "exon-shuffling"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingInstance {
    id: String,
    capacity: u64,
    weights: Vec<u64>,
}

impl PackingInstance {
    pub fn new(id: impl Into<String>, capacity: u64, weights: Vec<u64>) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::InvalidInstance("bin capacity must be positive".into()));
        }
        if let Some((j, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, &w)| w == 0 || w > capacity)
        {
            return Err(Error::InvalidInstance(format!(
                "piece {j} has weight {w}, outside (0, {capacity}]"
            )));
        }
        Ok(Self {
            id: id.into(),
            capacity,
            weights,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn num_pieces(&self) -> usize {
        self.weights.len()
    }

    /// Uniform weights in `[round(2C/15), round(2C/3)]` (the 20..100 of a
    /// 150 capacity).
    pub fn generate_uniform(id: impl Into<String>, pieces: usize, capacity: u64, rng: &mut RunRng) -> Self {
        let lo = ((capacity as f64 * 20.0 / 150.0) as u64).max(1);
        let hi = ((capacity as f64 * 100.0 / 150.0) as u64).max(lo);
        let weights = (0..pieces).map(|_| rng.gen_range(lo..=hi)).collect();
        Self::new(id, capacity, weights).expect("generated weights fit")
    }

    /// Triplets summing exactly to the capacity, so the optimum uses
    /// `pieces / 3` completely full bins. `pieces` is rounded down to a
    /// multiple of three.
    pub fn generate_triplets(id: impl Into<String>, pieces: usize, capacity: u64, rng: &mut RunRng) -> Self {
        let c = capacity as f64;
        let mut weights = Vec::with_capacity(pieces);
        for _ in 0..pieces / 3 {
            let first = rng.gen_range((0.38 * c) as u64..=(0.49 * c) as u64);
            let lo = (0.25 * c) as u64;
            let hi = ((capacity - first) / 2).max(lo);
            let second = rng.gen_range(lo..=hi);
            let third = capacity - first - second;
            weights.extend([first, second, third]);
        }
        weights.shuffle(rng);
        Self::new(id, capacity, weights).expect("triplets fit")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bin {
    pieces: Vec<u32>,
    fullness: u64,
}

impl Bin {
    fn with(piece: u32, weight: u64) -> Self {
        Self {
            pieces: vec![piece],
            fullness: weight,
        }
    }

    pub fn pieces(&self) -> &[u32] {
        &self.pieces
    }

    pub fn fullness(&self) -> u64 {
        self.fullness
    }

    fn push(&mut self, piece: u32, weight: u64) {
        self.pieces.push(piece);
        self.fullness += weight;
    }
}

/// A packing: ordered list of non-empty bins.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Packing {
    bins: Vec<Bin>,
}

impl Packing {
    pub fn bins(&self) -> &[Bin] {
        &self.bins
    }

    pub fn num_bins(&self) -> usize {
        self.bins.len()
    }

    pub(crate) fn sum_of_squares(&self) -> u128 {
        self.bins
            .iter()
            .map(|b| u128::from(b.fullness) * u128::from(b.fullness))
            .sum()
    }

    fn prune(&mut self) {
        self.bins.retain(|b| !b.pieces.is_empty());
    }

    /// Builds a packing from explicit bins of piece indices.
    pub fn from_bins(inst: &PackingInstance, bins: Vec<Vec<u32>>) -> Self {
        let bins = bins
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|pieces| {
                let fullness = pieces.iter().map(|&p| inst.weights[p as usize]).sum();
                Bin { pieces, fullness }
            })
            .collect();
        Self { bins }
    }

    /// Checks every structural invariant against `inst`.
    pub fn validate(&self, inst: &PackingInstance) -> core::result::Result<(), String> {
        let mut seen = vec![false; inst.num_pieces()];
        for (i, b) in self.bins.iter().enumerate() {
            if b.pieces.is_empty() {
                return Err(format!("bin {i} is empty"));
            }
            let sum: u64 = b.pieces.iter().map(|&p| inst.weights[p as usize]).sum();
            if sum != b.fullness {
                return Err(format!("bin {i} caches fullness {} but holds {sum}", b.fullness));
            }
            if sum > inst.capacity {
                return Err(format!("bin {i} holds {sum} > capacity {}", inst.capacity));
            }
            for &p in &b.pieces {
                if core::mem::replace(&mut seen[p as usize], true) {
                    return Err(format!("piece {p} packed twice"));
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(p) => Err(format!("piece {p} missing")),
            None => Ok(()),
        }
    }
}

/// `1 - (sum_i (fullness_i / C)^2) / n`.
pub fn fitness(inst: &PackingInstance, packing: &Packing) -> f64 {
    let n = packing.num_bins();
    if n == 0 {
        return 1.0;
    }
    let c = u128::from(inst.capacity);
    let denom = c * c * n as u128;
    (denom - packing.sum_of_squares()) as f64 / denom as f64
}

/// Packs pieces in `order`, each into the first bin with room.
pub fn first_fit(inst: &PackingInstance, order: &[u32]) -> Packing {
    let mut packing = Packing::default();
    for &p in order {
        let w = inst.weights[p as usize];
        match packing
            .bins
            .iter_mut()
            .find(|b| b.fullness + w <= inst.capacity)
        {
            Some(b) => b.push(p, w),
            None => packing.bins.push(Bin::with(p, w)),
        }
    }
    packing
}

/// Index of the feasible bin with least residual space for `weight`,
/// lowest index on ties.
pub fn best_fit_bin(inst: &PackingInstance, packing: &Packing, weight: u64) -> Option<usize> {
    packing
        .bins
        .iter()
        .enumerate()
        .filter(|(_, b)| b.fullness + weight <= inst.capacity)
        .min_by_key(|(i, b)| (inst.capacity - b.fullness, *i))
        .map(|(i, _)| i)
}

/// Places `piece` by best fit, opening a new bin when nothing fits.
pub fn best_fit_insert(inst: &PackingInstance, packing: &mut Packing, piece: u32) {
    let w = inst.weights[piece as usize];
    match best_fit_bin(inst, packing, w) {
        Some(i) => packing.bins[i].push(piece, w),
        None => packing.bins.push(Bin::with(piece, w)),
    }
}

#[derive(Debug, Clone)]
pub struct BinPacking {
    instance: Arc<PackingInstance>,
}

impl BinPacking {
    pub fn new(instance: Arc<PackingInstance>) -> Self {
        Self { instance }
    }

    pub fn instance(&self) -> &PackingInstance {
        &self.instance
    }
}

impl Problem for BinPacking {
    type Solution = Packing;

    fn domain_id(&self) -> &'static str {
        DOMAIN_ID
    }

    fn instance_id(&self) -> &str {
        self.instance.id()
    }

    fn heuristics(&self) -> &'static [HeuristicDescriptor] {
        HEURISTICS
    }

    fn initialise(&self, rng: &mut RunRng) -> Packing {
        let mut order: Vec<u32> = (0..self.instance.num_pieces() as u32).collect();
        order.shuffle(rng);
        first_fit(&self.instance, &order)
    }

    fn objective(&self, p: &Packing) -> f64 {
        fitness(&self.instance, p)
    }

    fn apply(&self, h: usize, p: &mut Packing, ctx: &mut ApplyContext<'_>) {
        let inst = &*self.instance;
        let alpha = ctx.params.intensity_of_mutation();
        let beta = ctx.params.depth_of_search();
        match h {
            0 => heuristics::swap_pieces(inst, p, ctx.rng),
            1 => heuristics::split_bin(inst, p, ctx.rng),
            2 => heuristics::repack_lowest(inst, p),
            3 => heuristics::ruin(inst, p, heuristics::ruin_count(alpha, p.num_bins()), true),
            4 => heuristics::ruin(inst, p, heuristics::ruin_count(alpha, p.num_bins()), false),
            5 => heuristics::swap_descent(inst, p, beta, ctx.rng),
            6 => heuristics::exchange_lowest(inst, p, beta, ctx.rng),
            _ => unreachable!("heuristic {h} is not unary"),
        }
        p.prune();
    }

    fn crossover(&self, h: usize, a: &Packing, b: &Packing, _ctx: &mut ApplyContext<'_>) -> Packing {
        match h {
            7 => heuristics::exon_shuffling(&self.instance, a, b),
            _ => unreachable!("heuristic {h} is not a crossover"),
        }
    }
}

#[cfg(test)]
mod tests;
