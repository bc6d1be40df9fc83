use alloc::format;
use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;

use crate::{Error, Result, RunRng};

/// A literal: variable index plus polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: u32,
    pub negated: bool,
}

impl Literal {
    pub fn positive(var: u32) -> Self {
        Self { var, negated: false }
    }

    pub fn negative(var: u32) -> Self {
        Self { var, negated: true }
    }

    /// DIMACS encoding: `k > 0` is variable `k - 1`, `k < 0` its negation.
    pub fn from_dimacs(k: i64) -> Option<Self> {
        if k == 0 {
            return None;
        }
        let var = u32::try_from(k.unsigned_abs() - 1).ok()?;
        Some(Self { var, negated: k < 0 })
    }

    pub fn to_dimacs(self) -> i64 {
        let k = i64::from(self.var) + 1;
        if self.negated {
            -k
        } else {
            k
        }
    }

    pub fn is_true(self, value: bool) -> bool {
        value != self.negated
    }
}

/// A CNF formula. Every clause is non-empty and every variable index is
/// below `num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidInstance(format!("clause {i} is empty")));
            }
            if let Some(l) = c.iter().find(|l| l.var as usize >= num_vars) {
                return Err(Error::InvalidInstance(format!(
                    "clause {i} mentions variable {} but the formula has {num_vars}",
                    l.var
                )));
            }
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn clause_satisfied(&self, clause: usize, values: &[bool]) -> bool {
        self.clauses[clause]
            .iter()
            .any(|l| l.is_true(values[l.var as usize]))
    }

    /// Number of broken clauses, by full scan.
    pub fn count_broken(&self, values: &[bool]) -> usize {
        (0..self.clauses.len())
            .filter(|&c| !self.clause_satisfied(c, values))
            .count()
    }
}

/// Uniform random k-SAT: each clause draws `k` distinct variables and
/// independent polarities.
pub fn random_ksat(num_vars: usize, num_clauses: usize, k: usize, rng: &mut RunRng) -> CnfFormula {
    assert!(k >= 1 && k <= num_vars, "clause width must be in 1..=num_vars");
    let clauses = (0..num_clauses)
        .map(|_| {
            index::sample(rng, num_vars, k)
                .into_iter()
                .map(|v| Literal {
                    var: v as u32,
                    negated: rng.gen_bool(0.5),
                })
                .collect()
        })
        .collect();
    CnfFormula { num_vars, clauses }
}

/// Uniform random 3-SAT with `round(ratio * num_vars)` clauses.
pub fn random_3sat(num_vars: usize, ratio: f64, rng: &mut RunRng) -> CnfFormula {
    let m = libm::round(ratio * num_vars as f64) as usize;
    random_ksat(num_vars, m, 3, rng)
}
