//! Experiment engine: single sweeps, noisy-repeat stability studies and full
//! benchmarks over datasets × selectors × measures, with deterministic seed
//! fan-out and reproducible report files.

mod benchmark;
mod emit;
mod sweep;

pub use benchmark::{run_benchmark, BenchmarkOutcome, BenchmarkSummary, RunFailure, SelectorSummary};
pub use emit::{emit_report, write_report_files, ReportFormat};
pub use sweep::{
    execute_stability, execute_sweep, run_stability_study, run_sweep, StabilityReport,
    StabilitySpec, StabilityStudy, SweepSpec,
};

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::data::{generate_wealth_dummy, load_csv, ColumnSpec, Dataset, NoiseSpec};
use crate::error::{Error, Result};
use crate::evaluators::EvaluatorConfig;
use crate::metrics::{FitnessWeights, MetricRange, MetricReport};
use crate::seed::mix;
use crate::selectors::SelectorConfig;

fn default_wealth_n() -> usize {
    500
}

/// Where a dataset comes from: a local CSV file or the generated wealth
/// dummy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceKind {
    Path(PathBuf),
    Wealth {
        #[serde(default = "default_wealth_n")]
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSource {
    /// Report identifier; defaults to the file stem or `wealth`.
    #[serde(default)]
    pub dataset_id: Option<String>,
    #[serde(flatten)]
    pub kind: SourceKind,
    /// Column handling for CSV sources.
    #[serde(default)]
    pub columns: Option<ColumnSpec>,
}

impl DatasetSource {
    pub fn from_path(path: impl Into<PathBuf>) -> Self {
        DatasetSource {
            dataset_id: None,
            kind: SourceKind::Path(path.into()),
            columns: None,
        }
    }

    pub fn wealth(n: usize) -> Self {
        DatasetSource {
            dataset_id: None,
            kind: SourceKind::Wealth { n },
            columns: None,
        }
    }

    /// The identifier this source will report under.
    pub fn id(&self) -> String {
        if let Some(id) = &self.dataset_id {
            return id.clone();
        }
        match &self.kind {
            SourceKind::Wealth { .. } => "wealth".to_string(),
            SourceKind::Path(path) => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string()),
        }
    }

    /// Loads or generates the dataset. `seed` only matters for generated
    /// sources.
    pub fn resolve(&self, seed: u64) -> Result<Dataset> {
        let data = match &self.kind {
            SourceKind::Path(path) => {
                let spec = self.columns.clone().unwrap_or_default();
                load_csv(path, &spec)?
            }
            SourceKind::Wealth { n } => generate_wealth_dummy(*n, mix(seed, &["wealth-data"]))?,
        };
        Ok(match &self.dataset_id {
            Some(id) => data.renamed(id.clone()),
            None => data,
        })
    }
}

/// Declarative description of a full benchmark: the cross product of
/// datasets × selectors × evaluators, each run producing one report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkConfig {
    pub datasets: Vec<DatasetSource>,
    pub selectors: Vec<SelectorConfig>,
    pub evaluators: Vec<EvaluatorConfig>,
    /// Integration range; `None` means the full `[1, d]` per dataset.
    #[serde(default)]
    pub range: Option<(u32, u32)>,
    #[serde(default = "default_stride")]
    pub stride: usize,
    /// Noisy repeats for the overlap-stability indices; below 2 the study
    /// is skipped.
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    #[serde(default = "default_noise")]
    pub noise: NoiseSpec,
    pub output_dir: PathBuf,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub fitness: FitnessWeights,
}

pub(crate) fn default_stride() -> usize {
    1
}

pub(crate) fn default_repeats() -> usize {
    10
}

fn default_noise() -> NoiseSpec {
    NoiseSpec {
        level: 0.1,
        seed: 0,
    }
}

impl BenchmarkConfig {
    pub fn validate(&self) -> Result<()> {
        if self.datasets.is_empty() || self.selectors.is_empty() || self.evaluators.is_empty() {
            return Err(Error::InvalidInput(
                "benchmark needs at least one dataset, selector and evaluator".into(),
            ));
        }
        if self.stride == 0 {
            return Err(Error::InvalidInput("stride must be at least 1".into()));
        }
        if let Some((a, b)) = self.range {
            MetricRange::new(a, b)?;
        }
        // Report files are keyed by (dataset, selector, measure); duplicates
        // would silently overwrite each other.
        let mut ids: Vec<String> = self.datasets.iter().map(|d| d.id()).collect();
        ids.sort();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate dataset ids".into()));
        }
        let mut selectors: Vec<&str> = self
            .selectors
            .iter()
            .map(|s| s.selector_id.as_str())
            .collect();
        selectors.sort_unstable();
        if selectors.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate selector ids".into()));
        }
        let mut measures: Vec<&str> = self
            .evaluators
            .iter()
            .map(|e| e.measure_id.as_str())
            .collect();
        measures.sort_unstable();
        if measures.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate measure ids".into()));
        }
        for selector in &self.selectors {
            selector.validate()?;
        }
        for evaluator in &self.evaluators {
            evaluator.validate()?;
        }
        Ok(())
    }
}

/// Fitness-improvement block of a run report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BfiReport {
    pub value: f64,
    /// Subset size at which the observed curve peaks.
    pub k_best: u32,
    pub k_c: f64,
    pub k_p: f64,
}

/// Full result of one (dataset, selector, measure) run. Field order is the
/// stable JSON schema. `wall_time_ms` is null in benchmark-emitted reports
/// so identical configs produce byte-identical files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub dataset_id: String,
    pub selector_id: String,
    pub measure_id: String,
    pub range: MetricRange,
    pub stride: usize,
    pub fsdem: f64,
    pub stability: f64,
    pub bfi: BfiReport,
    pub nogueira: Option<f64>,
    pub kuncheva: Option<f64>,
    pub curve: Vec<(u32, f64)>,
    pub derivative: Vec<(u32, f64)>,
    pub seed: u64,
    pub wall_time_ms: Option<u64>,
    pub version: String,
    pub observation_count: usize,
    pub config_fingerprint: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl RunReport {
    /// The headline metric view of this run.
    pub fn metric_report(&self) -> MetricReport {
        MetricReport {
            fsdem: self.fsdem,
            stability: self.stability,
            range: self.range,
            measure_id: self.measure_id.clone(),
            selector_id: self.selector_id.clone(),
            dataset_id: self.dataset_id.clone(),
            observation_count: self.observation_count,
        }
    }
}

/// Stable fingerprint of everything that determines a run's output.
pub(crate) fn config_fingerprint(
    dataset_id: &str,
    selector: &SelectorConfig,
    evaluator: &EvaluatorConfig,
    range: &MetricRange,
    stride: usize,
    weights: &FitnessWeights,
) -> String {
    #[derive(Serialize)]
    struct Input<'a> {
        dataset_id: &'a str,
        selector: &'a SelectorConfig,
        evaluator: &'a EvaluatorConfig,
        range: &'a MetricRange,
        stride: usize,
        weights: &'a FitnessWeights,
    }
    let canonical = serde_json::to_string(&Input {
        dataset_id,
        selector,
        evaluator,
        range,
        stride,
        weights,
    })
    .expect("config types serialize");
    format!("{:016x}", mix(0, &[&canonical]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluators::MeasureId;
    use crate::selectors::SelectorId;

    #[test]
    fn dataset_source_ids() {
        assert_eq!(DatasetSource::wealth(100).id(), "wealth");
        assert_eq!(DatasetSource::from_path("/tmp/iris.csv").id(), "iris");
        let named = DatasetSource {
            dataset_id: Some("d1".into()),
            ..DatasetSource::wealth(100)
        };
        assert_eq!(named.id(), "d1");
    }

    #[test]
    fn wealth_source_resolves_deterministically() {
        let source = DatasetSource::wealth(50);
        assert_eq!(source.resolve(3).unwrap(), source.resolve(3).unwrap());
        assert_ne!(source.resolve(3).unwrap(), source.resolve(4).unwrap());
    }

    #[test]
    fn benchmark_config_rejects_duplicates_and_empties() {
        let mut config = BenchmarkConfig {
            datasets: vec![DatasetSource::wealth(50)],
            selectors: vec![SelectorConfig::new(SelectorId::Random)],
            evaluators: vec![EvaluatorConfig::new(MeasureId::Accuracy)],
            range: None,
            stride: 1,
            repeats: 0,
            noise: NoiseSpec { level: 0.0, seed: 0 },
            output_dir: "/tmp/out".into(),
            master_seed: 0,
            fitness: FitnessWeights::default(),
        };
        assert!(config.validate().is_ok());

        config.selectors.push(SelectorConfig::new(SelectorId::Random));
        assert!(config.validate().is_err());
        config.selectors.pop();

        config.datasets.clear();
        assert!(config.validate().is_err());
    }

    #[test]
    fn fingerprint_is_stable_and_input_sensitive() {
        let selector = SelectorConfig::new(SelectorId::InfoGain);
        let evaluator = EvaluatorConfig::new(MeasureId::Accuracy);
        let range = MetricRange::new(1, 5).unwrap();
        let w = FitnessWeights::default();
        let a = config_fingerprint("d", &selector, &evaluator, &range, 1, &w);
        let b = config_fingerprint("d", &selector, &evaluator, &range, 1, &w);
        assert_eq!(a, b);
        let c = config_fingerprint("d", &selector, &evaluator, &range, 2, &w);
        assert_ne!(a, c);
    }

    #[test]
    fn config_round_trips_through_json() {
        let config = BenchmarkConfig {
            datasets: vec![DatasetSource::wealth(120), DatasetSource::from_path("x.csv")],
            selectors: vec![SelectorConfig::new(SelectorId::Chi2)],
            evaluators: vec![EvaluatorConfig::new(MeasureId::Clacc)],
            range: Some((2, 5)),
            stride: 2,
            repeats: 4,
            noise: NoiseSpec { level: 0.2, seed: 9 },
            output_dir: "/tmp/reports".into(),
            master_seed: 31,
            fitness: FitnessWeights::default(),
        };
        let json = serde_json::to_string(&config).unwrap();
        let back: BenchmarkConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, config);
    }
}
