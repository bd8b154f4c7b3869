//! Pure, deterministic evaluation metrics: the curve-based FSDEM score and
//! stability score, plus the selection-overlap and fitness-based comparison
//! measures.

pub mod curve;
pub mod fitness;
pub mod selection;

pub use curve::{
    build_curve, finite_differences, fsdem_score, stability_score, subsample_observations,
    trapezoid_integral, MetricRange, ObservationCurve, DEFAULT_BOUNDS,
};
pub use fitness::{bfi, fitness, FitnessWeights};
pub use selection::{
    consistency_index, kuncheva_stability, nogueira_stability, RankedSubsetFamily, SelectionMatrix,
};

use serde::{Deserialize, Serialize};

/// Headline result of evaluating one selector on one dataset with one
/// measure: the FSDEM score and its stability over a range, plus provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub fsdem: f64,
    pub stability: f64,
    pub range: MetricRange,
    pub measure_id: String,
    pub selector_id: String,
    pub dataset_id: String,
    pub observation_count: usize,
}
