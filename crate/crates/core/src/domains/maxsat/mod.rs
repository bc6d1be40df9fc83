//! MAX-SAT: minimise the number of broken clauses of a CNF formula.
//!
//! Solutions carry incremental bookkeeping: per-clause true-literal counts,
//! the set of broken clauses, and per-variable positive gain (broken clauses
//! a flip would satisfy), negative gain (satisfied clauses a flip would
//! break) and age. A flip rescans only the clauses touching the variable.

mod formula;
mod heuristics;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

pub use formula::{random_3sat, random_ksat, CnfFormula, Literal};

use crate::domain::{default_instance_id, ApplyContext, Problem};
use crate::{HeuristicDescriptor, HeuristicKind, RunRng};

pub const DOMAIN_ID: &str = "maxsat";

pub const HEURISTICS: &[HeuristicDescriptor] = &[
    HeuristicDescriptor::new(0, HeuristicKind::Mutation, "gsat"),
    HeuristicDescriptor::new(1, HeuristicKind::Mutation, "hsat"),
    HeuristicDescriptor::new(2, HeuristicKind::Mutation, "walksat"),
    HeuristicDescriptor::new(3, HeuristicKind::Mutation, "novelty"),
    HeuristicDescriptor::new(4, HeuristicKind::RuinRecreate, "reinitialise-proportion"),
    HeuristicDescriptor::new(5, HeuristicKind::LocalSearch, "first-improvement-random-var"),
    HeuristicDescriptor::new(6, HeuristicKind::LocalSearch, "first-improvement-broken-clause"),
    HeuristicDescriptor::new(7, HeuristicKind::Crossover, "one-point"),
    HeuristicDescriptor::new(8, HeuristicKind::Crossover, "two-point"),
];

/// Occurrence of a distinct variable inside one clause.
#[derive(Debug, Clone, Copy)]
struct ClauseVar {
    var: u32,
    pos: u32,
    neg: u32,
}

/// A loaded MAX-SAT instance with its occurrence index.
#[derive(Debug, Clone)]
pub struct MaxSat {
    formula: Arc<CnfFormula>,
    instance_id: String,
    clause_vars: Vec<Vec<ClauseVar>>,
    /// Per variable: (clause, position of the variable in `clause_vars[clause]`).
    occurrences: Vec<Vec<(u32, u32)>>,
}

impl MaxSat {
    pub fn new(formula: Arc<CnfFormula>, instance_id: impl Into<String>) -> Self {
        let n = formula.num_vars();
        let mut clause_vars = Vec::with_capacity(formula.num_clauses());
        let mut occurrences = vec![Vec::new(); n];
        for (ci, clause) in formula.clauses().iter().enumerate() {
            let mut vars: Vec<ClauseVar> = Vec::new();
            for l in clause {
                let slot = match vars.iter().position(|cv| cv.var == l.var) {
                    Some(p) => p,
                    None => {
                        vars.push(ClauseVar { var: l.var, pos: 0, neg: 0 });
                        vars.len() - 1
                    }
                };
                if l.negated {
                    vars[slot].neg += 1;
                } else {
                    vars[slot].pos += 1;
                }
            }
            for (k, cv) in vars.iter().enumerate() {
                occurrences[cv.var as usize].push((ci as u32, k as u32));
            }
            clause_vars.push(vars);
        }
        Self {
            formula,
            instance_id: instance_id.into(),
            clause_vars,
            occurrences,
        }
    }

    pub fn from_formula(formula: CnfFormula) -> Self {
        let id = default_instance_id("cnf", &[formula.num_vars(), formula.num_clauses()]);
        Self::new(Arc::new(formula), id)
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn num_vars(&self) -> usize {
        self.formula.num_vars()
    }

    /// Builds the full bookkeeping for `values` from scratch.
    pub fn assignment(&self, values: Vec<bool>) -> Assignment {
        assert_eq!(values.len(), self.num_vars());
        let m = self.formula.num_clauses();
        let n = values.len();
        let mut a = Assignment {
            values,
            true_lits: vec![0; m],
            positive: vec![0; n],
            negative: vec![0; n],
            last_flip: vec![0; n],
            flips: 0,
            broken: BrokenSet::new(m),
        };
        for c in 0..m {
            let t = self.clause_vars[c]
                .iter()
                .map(|cv| true_lits_of(cv, a.values[cv.var as usize]))
                .sum();
            a.true_lits[c] = t;
            if t == 0 {
                a.broken.insert(c as u32);
            }
            self.add_contributions(&mut a, c);
        }
        a
    }

    pub fn random_assignment(&self, rng: &mut RunRng) -> Assignment {
        let values = (0..self.num_vars()).map(|_| rng.gen_bool(0.5)).collect();
        self.assignment(values)
    }

    /// Flips variable `v`, updating every gain touched by the flip.
    pub fn flip(&self, a: &mut Assignment, v: usize) {
        for &(c, _) in &self.occurrences[v] {
            self.remove_contributions(a, c as usize);
        }
        let old = a.values[v];
        a.values[v] = !old;
        for &(c, k) in &self.occurrences[v] {
            let c = c as usize;
            let cv = self.clause_vars[c][k as usize];
            let before = a.true_lits[c];
            let after = before - true_lits_of(&cv, old) + true_lits_of(&cv, !old);
            a.true_lits[c] = after;
            match (before == 0, after == 0) {
                (true, false) => a.broken.remove(c as u32),
                (false, true) => a.broken.insert(c as u32),
                _ => {}
            }
            self.add_contributions(a, c);
        }
        a.flips += 1;
        a.last_flip[v] = a.flips;
    }

    fn adjust(&self, a: &mut Assignment, c: usize, add: bool) {
        let t = a.true_lits[c];
        for cv in &self.clause_vars[c] {
            let u = cv.var as usize;
            let lt = true_lits_of(cv, a.values[u]);
            let lf = true_lits_of(cv, !a.values[u]);
            let after = t - lt + lf;
            if t == 0 && after > 0 {
                if add {
                    a.positive[u] += 1;
                } else {
                    a.positive[u] -= 1;
                }
            } else if t > 0 && after == 0 {
                if add {
                    a.negative[u] += 1;
                } else {
                    a.negative[u] -= 1;
                }
            }
        }
    }

    fn add_contributions(&self, a: &mut Assignment, c: usize) {
        self.adjust(a, c, true);
    }

    fn remove_contributions(&self, a: &mut Assignment, c: usize) {
        self.adjust(a, c, false);
    }

    /// Distinct variables of clause `c`, in first-occurrence order.
    pub(crate) fn clause_var_ids(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.clause_vars[c].iter().map(|cv| cv.var as usize)
    }
}

fn true_lits_of(cv: &ClauseVar, value: bool) -> u32 {
    if value {
        cv.pos
    } else {
        cv.neg
    }
}

/// Indexed set of broken clause ids with O(1) insert, remove and sampling.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BrokenSet {
    items: Vec<u32>,
    position: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl BrokenSet {
    fn new(m: usize) -> Self {
        Self {
            items: Vec::new(),
            position: vec![ABSENT; m],
        }
    }

    fn insert(&mut self, c: u32) {
        debug_assert_eq!(self.position[c as usize], ABSENT);
        self.position[c as usize] = self.items.len() as u32;
        self.items.push(c);
    }

    fn remove(&mut self, c: u32) {
        let p = self.position[c as usize];
        debug_assert_ne!(p, ABSENT);
        let last = self.items.pop().expect("non-empty");
        if last != c {
            self.items[p as usize] = last;
            self.position[last as usize] = p;
        }
        self.position[c as usize] = ABSENT;
    }
}

/// A truth assignment with incremental gain and age bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
    true_lits: Vec<u32>,
    positive: Vec<u32>,
    negative: Vec<u32>,
    last_flip: Vec<u64>,
    flips: u64,
    broken: BrokenSet,
}

impl Assignment {
    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn broken_count(&self) -> usize {
        self.broken.items.len()
    }

    pub fn broken_clauses(&self) -> &[u32] {
        &self.broken.items
    }

    pub fn positive_gain(&self, v: usize) -> u32 {
        self.positive[v]
    }

    pub fn negative_gain(&self, v: usize) -> u32 {
        self.negative[v]
    }

    pub fn net_gain(&self, v: usize) -> i64 {
        i64::from(self.positive[v]) - i64::from(self.negative[v])
    }

    /// Flips performed since `v` was last flipped.
    pub fn age(&self, v: usize) -> u64 {
        self.flips - self.last_flip[v]
    }

    pub fn total_flips(&self) -> u64 {
        self.flips
    }
}

impl Problem for MaxSat {
    type Solution = Assignment;

    fn domain_id(&self) -> &'static str {
        DOMAIN_ID
    }

    fn instance_id(&self) -> &str {
        &self.instance_id
    }

    fn heuristics(&self) -> &'static [HeuristicDescriptor] {
        HEURISTICS
    }

    fn initialise(&self, rng: &mut RunRng) -> Assignment {
        self.random_assignment(rng)
    }

    fn objective(&self, a: &Assignment) -> f64 {
        a.broken_count() as f64
    }

    fn apply(&self, h: usize, a: &mut Assignment, ctx: &mut ApplyContext<'_>) {
        match h {
            0 => heuristics::gsat(self, a, ctx.rng),
            1 => heuristics::hsat(self, a),
            2 => heuristics::walksat(self, a, ctx.rng),
            3 => heuristics::novelty(self, a, ctx.rng),
            4 => heuristics::reinitialise(self, a, ctx.params.intensity_of_mutation(), ctx.rng),
            5 => heuristics::local_search_random(self, a, ctx.params.depth_of_search(), ctx.rng),
            6 => heuristics::local_search_broken(self, a, ctx.params.depth_of_search(), ctx.rng),
            _ => unreachable!("heuristic {h} is not unary"),
        }
    }

    fn crossover(
        &self,
        h: usize,
        first: &Assignment,
        second: &Assignment,
        ctx: &mut ApplyContext<'_>,
    ) -> Assignment {
        let values = match h {
            7 => heuristics::one_point(first.values(), second.values(), ctx.rng),
            8 => heuristics::two_point(first.values(), second.values(), ctx.rng),
            _ => unreachable!("heuristic {h} is not a crossover"),
        };
        self.assignment(values)
    }
}

#[cfg(test)]
mod tests;
