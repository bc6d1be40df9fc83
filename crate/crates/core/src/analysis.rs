//! Borda-count comparison of algorithms across instances and domains.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::trace::TraceSummary;
use crate::{Error, Result, RunResult};

/// Median with the two central values averaged for even counts.
pub fn median_of_best(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyCell);
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Ok(if v.len() % 2 == 1 { v[mid] } else { (v[mid - 1] + v[mid]) / 2.0 })
}

/// Competition ranks (1 is best, minimisation). Tied values share the
/// smaller rank and the following rank is skipped.
pub fn ranks(values: &[f64]) -> Vec<u32> {
    values
        .iter()
        .map(|&x| 1 + values.iter().filter(|&&y| y < x).count() as u32)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub domain: String,
    pub instance: String,
    /// One entry per algorithm of the table, in table order.
    pub ranks: Vec<Option<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RankTable {
    algorithms: Vec<String>,
    rows: Vec<RankRow>,
}

impl RankTable {
    pub fn new(algorithms: Vec<String>) -> Self {
        Self { algorithms, rows: Vec::new() }
    }

    pub fn algorithms(&self) -> &[String] {
        &self.algorithms
    }

    pub fn rows(&self) -> &[RankRow] {
        &self.rows
    }

    fn row_mut(&mut self, domain: &str, instance: &str) -> &mut RankRow {
        let k = match self.rows.iter().position(|r| r.domain == domain && r.instance == instance) {
            Some(k) => k,
            None => {
                self.rows.push(RankRow {
                    domain: domain.to_string(),
                    instance: instance.to_string(),
                    ranks: vec![None; self.algorithms.len()],
                });
                self.rows.len() - 1
            }
        };
        &mut self.rows[k]
    }

    /// Sets one cell, adding the algorithm column if it is new.
    pub fn set_rank(&mut self, domain: &str, instance: &str, algorithm: &str, rank: u32) {
        let col = match self.algorithms.iter().position(|a| a == algorithm) {
            Some(c) => c,
            None => {
                self.algorithms.push(algorithm.to_string());
                for r in &mut self.rows {
                    r.ranks.push(None);
                }
                self.algorithms.len() - 1
            }
        };
        self.row_mut(domain, instance).ranks[col] = Some(rank);
    }

    /// Ranks the algorithms on each instance by the median best value of
    /// their runs.
    pub fn from_results(results: &[RunResult]) -> Result<Self> {
        let mut cells: BTreeMap<(&str, &str), BTreeMap<&str, Vec<f64>>> = BTreeMap::new();
        let mut algorithms: Vec<String> = Vec::new();
        for r in results {
            if !algorithms.contains(&r.algorithm) {
                algorithms.push(r.algorithm.clone());
            }
            cells
                .entry((r.domain.as_str(), r.instance.as_str()))
                .or_default()
                .entry(r.algorithm.as_str())
                .or_default()
                .push(r.best_value);
        }
        algorithms.sort();
        let mut table = Self::new(algorithms.clone());
        for ((domain, instance), by_alg) in cells {
            let mut present = Vec::new();
            let mut medians = Vec::new();
            for (alg, values) in by_alg {
                present.push(alg);
                medians.push(median_of_best(&values)?);
            }
            for (alg, rank) in present.into_iter().zip(ranks(&medians)) {
                table.set_rank(domain, instance, alg, rank);
            }
            table.row_mut(domain, instance);
        }
        Ok(table)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BordaReport {
    pub algorithms: Vec<String>,
    /// Per-domain subtotals in first-seen domain order.
    pub domains: Vec<(String, Vec<u64>)>,
    pub overall: Vec<u64>,
}

impl BordaReport {
    pub fn subtotal(&self, domain: &str, algorithm: &str) -> Option<u64> {
        let col = self.algorithms.iter().position(|a| a == algorithm)?;
        self.domains.iter().find(|(d, _)| d == domain).map(|(_, t)| t[col])
    }

    pub fn total(&self, algorithm: &str) -> Option<u64> {
        let col = self.algorithms.iter().position(|a| a == algorithm)?;
        Some(self.overall[col])
    }
}

/// Sums ranks per algorithm (lower is better), overall and per domain.
pub fn borda(table: &RankTable) -> Result<BordaReport> {
    let n = table.algorithms.len();
    let mut domains: Vec<(String, Vec<u64>)> = Vec::new();
    let mut overall = vec![0u64; n];
    for row in &table.rows {
        let k = match domains.iter().position(|(d, _)| *d == row.domain) {
            Some(k) => k,
            None => {
                domains.push((row.domain.clone(), vec![0; n]));
                domains.len() - 1
            }
        };
        for (col, rank) in row.ranks.iter().enumerate() {
            let rank = rank.ok_or_else(|| Error::MissingCell {
                instance: row.instance.clone(),
                algorithm: table.algorithms[col].clone(),
            })?;
            domains[k].1[col] += u64::from(rank);
            overall[col] += u64::from(rank);
        }
    }
    Ok(BordaReport {
        algorithms: table.algorithms.clone(),
        domains,
        overall,
    })
}

/// Trace summaries of every result that recorded at least one point.
pub fn summarize(results: &[RunResult]) -> Vec<(&RunResult, TraceSummary)> {
    results.iter().filter_map(|r| Some((r, r.trace.summary()?))).collect()
}
