use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

/// Best-so-far objective value over budget consumption.
///
/// Points are appended only on strict improvement, plus one terminal point
/// when a run ends, so values are monotone non-increasing.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FitnessTrace {
    points: Vec<(u64, f64)>,
}

impl FitnessTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn points(&self) -> &[(u64, f64)] {
        &self.points
    }

    pub fn best(&self) -> Option<f64> {
        self.points.last().map(|p| p.1)
    }

    pub fn first(&self) -> Option<f64> {
        self.points.first().map(|p| p.1)
    }

    /// Records `value` if it strictly improves on the current best.
    /// Returns whether a point was added.
    pub fn record(&mut self, consumed: u64, value: f64) -> bool {
        match self.best() {
            Some(best) if value >= best => false,
            _ => {
                self.points.push((consumed, value));
                true
            }
        }
    }

    /// Appends the terminal point at budget exhaustion.
    pub fn close(&mut self, consumed: u64) {
        if let Some(best) = self.best() {
            self.points.push((consumed, best));
        }
    }

    pub fn clear(&mut self) {
        self.points.clear();
    }

    /// Basic shape of the trace.
    pub fn summary(&self) -> Option<TraceSummary> {
        let first = *self.points.first()?;
        let last = *self.points.last()?;
        let at_best = self
            .points
            .iter()
            .find(|p| p.1 == last.1)
            .map(|p| p.0)
            .unwrap_or(last.0);
        let improvements = self.points.windows(2).filter(|w| w[1].1 < w[0].1).count();
        Some(TraceSummary {
            initial_value: first.1,
            final_value: last.1,
            improvements,
            consumed_at_best: at_best,
            consumed_total: last.0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub initial_value: f64,
    pub final_value: f64,
    pub improvements: usize,
    pub consumed_at_best: u64,
    pub consumed_total: u64,
}
