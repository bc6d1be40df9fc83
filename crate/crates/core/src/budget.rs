use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Monotone millisecond clock, injected by the host.
pub trait Clock {
    /// Milliseconds elapsed since the clock was started.
    fn elapsed_ms(&self) -> u64;
}

/// Termination contract of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "limit", rename_all = "snake_case")]
pub enum BudgetMode {
    /// Wall-clock limit in milliseconds.
    WallClock(u64),
    /// Number of objective evaluations across the domain barrier.
    Evaluations(u64),
}

impl BudgetMode {
    pub fn limit(&self) -> u64 {
        match *self {
            BudgetMode::WallClock(ms) => ms,
            BudgetMode::Evaluations(n) => n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BudgetMode::WallClock(_) => "wall_clock",
            BudgetMode::Evaluations(_) => "evaluations",
        }
    }
}

/// Budget consumption in the unit of its mode.
///
/// `consumed` never decreases, so once the budget is exhausted it stays
/// exhausted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunBudget {
    mode: BudgetMode,
    consumed: u64,
}

impl RunBudget {
    pub fn new(mode: BudgetMode) -> Result<Self> {
        if mode.limit() == 0 {
            return Err(Error::BudgetEmpty);
        }
        Ok(Self { mode, consumed: 0 })
    }

    pub fn mode(&self) -> BudgetMode {
        self.mode
    }

    pub fn limit(&self) -> u64 {
        self.mode.limit()
    }

    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn has_expired(&self) -> bool {
        self.consumed >= self.mode.limit()
    }

    /// Fraction of the budget used, in `[0, 1]`.
    pub fn fraction_used(&self) -> f64 {
        let f = self.consumed as f64 / self.mode.limit() as f64;
        f.min(1.0)
    }

    /// Records one evaluation (only meaningful in `Evaluations` mode).
    pub(crate) fn record_evaluation(&mut self) {
        if let BudgetMode::Evaluations(_) = self.mode {
            self.consumed += 1;
        }
    }

    /// Records a clock reading (only meaningful in `WallClock` mode).
    pub(crate) fn observe_clock(&mut self, elapsed_ms: u64) {
        if let BudgetMode::WallClock(_) = self.mode {
            self.consumed = self.consumed.max(elapsed_ms);
        }
    }
}
