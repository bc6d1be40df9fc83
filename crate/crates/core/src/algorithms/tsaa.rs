use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::{BudgetMode, HeuristicKind, HyperHeuristic, ProblemDomain, Result, RunRng};

const STEP: f64 = 1.0;
const BETA_STEP: u32 = 5;
const WALL_WINDOW_MS: u64 = 100;

/// Tabu entries keyed by heuristic id, each remembering the iteration it
/// was (re)added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabuList {
    entered: Vec<Option<u64>>,
    tenure: u64,
}

impl TabuList {
    pub fn new(heuristics: usize, tenure: u64) -> Self {
        Self {
            entered: vec![None; heuristics],
            tenure,
        }
    }

    pub fn tenure(&self) -> u64 {
        self.tenure
    }

    pub fn add(&mut self, h: usize, iteration: u64) {
        self.entered[h] = Some(iteration);
    }

    pub fn clear(&mut self) {
        self.entered.iter_mut().for_each(|e| *e = None);
    }

    /// Drops entries that have been tabu for longer than the tenure.
    pub fn release(&mut self, iteration: u64) {
        let tenure = self.tenure;
        for e in &mut self.entered {
            if e.is_some_and(|at| iteration - at > tenure) {
                *e = None;
            }
        }
    }

    pub fn contains(&self, h: usize) -> bool {
        self.entered[h].is_some()
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.entered.len()).filter(|&h| self.contains(h)).collect()
    }
}

/// Recent-performance scores over the non-crossover heuristics.
#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicScores {
    values: Vec<f64>,
    eligible: Vec<usize>,
}

impl HeuristicScores {
    pub fn new(heuristics: usize, eligible: Vec<usize>) -> Self {
        Self {
            values: vec![0.0; heuristics],
            eligible,
        }
    }

    pub fn value(&self, h: usize) -> f64 {
        self.values[h]
    }

    pub fn eligible(&self) -> &[usize] {
        &self.eligible
    }

    pub fn increase(&mut self, h: usize, step: f64) {
        self.values[h] += step;
    }

    pub fn decrease(&mut self, h: usize, step: f64) {
        self.values[h] -= step;
    }

    /// Highest-valued eligible heuristic outside the tabu list, ties broken
    /// uniformly. With everything tabu the tabu list is ignored.
    pub fn select(&self, tabu: &TabuList, rng: &mut RunRng) -> Option<usize> {
        let free: Vec<usize> = self.eligible.iter().copied().filter(|&h| !tabu.contains(h)).collect();
        let pool = if free.is_empty() { &self.eligible } else { &free };
        crate::rng::argmax_random_ties(pool.iter().copied(), |h| self.values[h], rng)
    }
}

/// Adaptive acceptance probability `beta` in percent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptanceState {
    beta: u32,
    window: u64,
    last_improvement: u64,
    last_worsening: u64,
}

impl AcceptanceState {
    pub fn new(window: u64, now: u64) -> Self {
        Self {
            beta: 0,
            window: window.max(1),
            last_improvement: now,
            last_worsening: now,
        }
    }

    /// Window length for a budget: one percent of an evaluation budget,
    /// a tenth of a second on the wall clock.
    pub fn window_for(mode: BudgetMode) -> u64 {
        match mode {
            BudgetMode::Evaluations(limit) => (limit / 100).max(1),
            BudgetMode::WallClock(_) => WALL_WINDOW_MS,
        }
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn improved(&mut self, now: u64) {
        self.last_improvement = now;
    }

    pub fn worsened(&mut self, now: u64) {
        self.last_worsening = now;
    }

    /// Applies the window rules at budget position `now`.
    pub fn tick(&mut self, now: u64) {
        if now.saturating_sub(self.last_improvement) >= self.window {
            self.beta = (self.beta + BETA_STEP).min(100);
            self.last_improvement = now;
        }
        if now.saturating_sub(self.last_worsening) >= self.window {
            self.beta = self.beta.saturating_sub(BETA_STEP);
            self.last_worsening = now;
        }
    }

    /// `random[1,100] < beta`.
    pub fn accepts(&self, rng: &mut RunRng) -> bool {
        rng.gen_range(1..=100) < self.beta
    }
}

/// Tabu tenure for `eligible` scored heuristics.
pub fn tenure_for(eligible: usize) -> u64 {
    eligible.saturating_sub(1) as u64
}

/// Score and tabu update after heuristic `h` turned `current` into `value`.
pub fn learn(scores: &mut HeuristicScores, tabu: &mut TabuList, h: usize, value: f64, current: f64, iteration: u64) {
    if value < current {
        scores.increase(h, STEP);
    } else if value > current {
        tabu.clear();
        scores.decrease(h, STEP);
        tabu.add(h, iteration);
    } else {
        tabu.add(h, iteration);
        tabu.release(iteration);
    }
}

/// Tabu-search heuristic selection with adaptive acceptance of
/// non-improving moves.
#[derive(Debug, Default, Clone)]
pub struct TabuSearchAdaptive {
    final_beta: u32,
}

impl TabuSearchAdaptive {
    pub fn new() -> Self {
        Self::default()
    }

    /// Acceptance percentage when the last run ended.
    pub fn final_beta(&self) -> u32 {
        self.final_beta
    }
}

impl HyperHeuristic for TabuSearchAdaptive {
    fn name(&self) -> &'static str {
        "tsaa"
    }

    fn solve(&mut self, domain: &mut dyn ProblemDomain, rng: &mut RunRng) -> Result<()> {
        let n = domain.number_of_heuristics();
        let eligible: Vec<usize> = domain
            .heuristics()
            .iter()
            .filter(|d| d.kind != HeuristicKind::Crossover)
            .map(|d| d.id)
            .collect();
        let mut tabu = TabuList::new(n, tenure_for(eligible.len()));
        let mut scores = HeuristicScores::new(n, eligible);
        domain.set_memory_size(2);
        if domain.has_expired() {
            return Ok(());
        }
        let window = domain.budget().map_or(1, |b| AcceptanceState::window_for(b.mode()));
        let mut current = domain.initialise_solution(0)?;
        let mut acceptance = AcceptanceState::new(window, domain.consumed());
        let mut iteration = 0u64;
        while !domain.has_expired() {
            let Some(h) = scores.select(&tabu, rng) else {
                break;
            };
            let value = domain.apply_heuristic(h, 0, 1)?;
            learn(&mut scores, &mut tabu, h, value, current, iteration);
            let now = domain.consumed();
            if value < current {
                domain.copy_solution(1, 0)?;
                acceptance.improved(now);
                current = value;
            } else {
                if value > current {
                    acceptance.worsened(now);
                }
                if acceptance.accepts(rng) {
                    domain.copy_solution(1, 0)?;
                    current = value;
                }
            }
            acceptance.tick(now);
            iteration += 1;
        }
        self.final_beta = acceptance.beta();
        Ok(())
    }
}
