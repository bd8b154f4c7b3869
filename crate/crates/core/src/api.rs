//! Request and response bodies of the HTTP service, shared by the server
//! and the client so both sides agree on the wire format.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::BenchmarkConfig;
use crate::metrics::{FitnessWeights, MetricRange, ObservationCurve};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HealthResponse {
    pub status: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
}

/// Curve-based metrics over raw observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMetricsRequest {
    /// Raw `(k, value)` observations in any order.
    pub curve: Vec<(u32, f64)>,
    /// Lower integration bound; defaults to the smallest observed k.
    #[serde(default)]
    pub a: Option<u32>,
    /// Upper integration bound; defaults to the largest observed k.
    #[serde(default)]
    pub b: Option<u32>,
    /// Measure bounds; defaults to [0, 1].
    #[serde(default)]
    pub bounds: Option<(f64, f64)>,
}

impl CurveMetricsRequest {
    pub fn build(&self) -> Result<(ObservationCurve, MetricRange)> {
        let curve = match self.bounds {
            Some(bounds) => ObservationCurve::with_bounds(self.curve.clone(), bounds)?,
            None => ObservationCurve::new(self.curve.clone())?,
        };
        let range = MetricRange::new(
            self.a.unwrap_or_else(|| curve.min_k()),
            self.b.unwrap_or_else(|| curve.max_k()),
        )?;
        Ok((curve, range))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMetricsResponse {
    pub fsdem: f64,
    pub stability: f64,
    pub integral: f64,
    pub range: MetricRange,
    pub derivative: Vec<(u32, f64)>,
}

/// Selection matrix as 0/1 rows, one per run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NogueiraRequest {
    pub rows: Vec<Vec<u8>>,
}

impl NogueiraRequest {
    pub fn rows_as_bools(&self) -> Result<Vec<Vec<bool>>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&cell| match cell {
                        0 => Ok(false),
                        1 => Ok(true),
                        other => Err(Error::InvalidInput(format!(
                            "selection cells must be 0 or 1, got {other}"
                        ))),
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KunchevaRequest {
    /// Feature rankings (or fixed subsets), one per run.
    pub sequences: Vec<Vec<usize>>,
    /// Total feature count.
    pub d: usize,
    /// Prefix size to compare.
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueResponse {
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubsetScore {
    pub measure_value: f64,
    pub selected_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BfiRequest {
    pub selected: SubsetScore,
    pub baseline: SubsetScore,
    pub d: usize,
    #[serde(default)]
    pub weights: FitnessWeights,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BfiResponse {
    pub fitness_selected: f64,
    pub fitness_baseline: f64,
    pub bfi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DummyRequest {
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRequest {
    pub config: BenchmarkConfig,
    /// Worker-pool size; defaults to the available parallelism. Never part
    /// of the config so pool size cannot influence results.
    #[serde(default)]
    pub workers: Option<usize>,
}
