use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The two operator knobs shared by every domain.
///
/// `intensity_of_mutation` scales the size of perturbative moves and
/// `depth_of_search` scales local search effort. Both live in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchParameters {
    intensity_of_mutation: f64,
    depth_of_search: f64,
}

impl SearchParameters {
    pub const DEFAULT_INTENSITY: f64 = 0.2;
    pub const DEFAULT_DEPTH: f64 = 0.2;

    pub fn new(intensity_of_mutation: f64, depth_of_search: f64) -> Result<Self> {
        let mut p = Self::default();
        p.set_intensity_of_mutation(intensity_of_mutation)?;
        p.set_depth_of_search(depth_of_search)?;
        Ok(p)
    }

    pub fn intensity_of_mutation(&self) -> f64 {
        self.intensity_of_mutation
    }

    pub fn depth_of_search(&self) -> f64 {
        self.depth_of_search
    }

    pub fn set_intensity_of_mutation(&mut self, value: f64) -> Result<()> {
        self.intensity_of_mutation = check_unit("intensity_of_mutation", value)?;
        Ok(())
    }

    pub fn set_depth_of_search(&mut self, value: f64) -> Result<()> {
        self.depth_of_search = check_unit("depth_of_search", value)?;
        Ok(())
    }
}

impl Default for SearchParameters {
    fn default() -> Self {
        Self {
            intensity_of_mutation: Self::DEFAULT_INTENSITY,
            depth_of_search: Self::DEFAULT_DEPTH,
        }
    }
}

fn check_unit(name: &'static str, value: f64) -> Result<f64> {
    // NaN fails the range check too
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::ParameterOutOfRange { name, value })
    }
}

/// `ceil(x)` as a count, for non-negative `x`.
pub(crate) fn ceil_count(x: f64) -> usize {
    libm::ceil(x) as usize
}

pub(crate) fn floor_count(x: f64) -> usize {
    libm::floor(x) as usize
}

/// Half-up rounding, matching `Math.round` for non-negative inputs.
pub(crate) fn round_count(x: f64) -> usize {
    libm::floor(x + 0.5) as usize
}

/// Attempt budget used by the stochastic local searches:
/// `ceil((1 + 9 * depth) * size)`.
pub(crate) fn pass_budget(depth: f64, size: usize) -> usize {
    ceil_count((1.0 + 9.0 * depth) * size as f64)
}
