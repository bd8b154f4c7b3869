//! Baseline fitness improvement: performance weighed against subset size.
//!
//! `fitness` mixes a bounded performance value with a size penalty that grows
//! exponentially in the selected fraction; `bfi` is the fitness gain of a
//! selected subset over the full feature set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weights of the performance term (`k_c`) and the penalty term (`k_p`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessWeights {
    pub k_c: f64,
    pub k_p: f64,
}

impl FitnessWeights {
    pub fn new(k_c: f64, k_p: f64) -> Result<Self> {
        if k_c < 0.0 || k_p < 0.0 || k_c + k_p <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "fitness weights must be nonnegative with positive sum, got k_c={k_c}, k_p={k_p}"
            )));
        }
        Ok(FitnessWeights { k_c, k_p })
    }
}

impl Default for FitnessWeights {
    fn default() -> Self {
        FitnessWeights { k_c: 0.9, k_p: 0.1 }
    }
}

/// Exponential size penalty, normalized so that penalty(0) = 0 and
/// penalty(1) = 1; strictly increasing and convex in between.
fn penalty(selected_fraction: f64) -> f64 {
    (selected_fraction.exp() - 1.0) / (std::f64::consts::E - 1.0)
}

/// Fitness of a subset: `k_c · measure_value − k_p · penalty(count/d)`.
pub fn fitness(
    measure_value: f64,
    selected_count: usize,
    d: usize,
    weights: &FitnessWeights,
) -> Result<f64> {
    if selected_count == 0 || selected_count > d {
        return Err(Error::InvalidInput(format!(
            "selected_count must be in 1..={d}, got {selected_count}"
        )));
    }
    Ok(weights.k_c * measure_value - weights.k_p * penalty(selected_count as f64 / d as f64))
}

/// Baseline fitness improvement: fitness of the selected subset minus the
/// fitness of the full feature set under the same weights. Positive values
/// mean feature selection added value.
pub fn bfi(fitness_selected: f64, fitness_baseline: f64) -> f64 {
    fitness_selected - fitness_baseline
}
