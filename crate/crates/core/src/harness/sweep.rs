use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{config_fingerprint, default_repeats, default_stride, BfiReport, DatasetSource, RunReport};
use crate::data::{inject_noise, Dataset, NoiseSpec};
use crate::error::{Error, Result};
use crate::evaluators::{effective_folds, evaluate_subset, EvaluatorConfig, MeasureId};
use crate::metrics::{
    bfi, finite_differences, fitness, fsdem_score, kuncheva_stability, nogueira_stability,
    stability_score, subsample_observations, FitnessWeights, MetricRange, ObservationCurve,
    RankedSubsetFamily, SelectionMatrix,
};
use crate::seed::mix;
use crate::selectors::{rank, SelectorConfig};
use crate::VERSION;

fn run_context(data: &Dataset, selector: &SelectorConfig, k: Option<usize>) -> impl Fn(Error) -> Error {
    let dataset = data.dataset_id().to_string();
    let selector = selector.selector_id.to_string();
    move |source| Error::RunFailed {
        dataset: dataset.clone(),
        selector: selector.clone(),
        k,
        source: Box::new(source),
    }
}

/// Ranks once, sweeps the measure over the (optionally strided) subset sizes
/// in `[a, b]`, and derives every per-run metric: the FSDEM score, its
/// stability, the derivative grid and the baseline fitness improvement at
/// the curve's best size against the full feature set.
pub fn run_sweep(
    data: &Dataset,
    selector: &SelectorConfig,
    evaluator: &EvaluatorConfig,
    range: MetricRange,
    stride: usize,
    weights: &FitnessWeights,
) -> Result<RunReport> {
    let d = data.d();
    if range.b() as usize > d {
        return Err(Error::InvalidRange(format!(
            "range [{}, {}] exceeds the {d} available features",
            range.a(),
            range.b()
        )));
    }
    let ranking = rank(data, selector).map_err(run_context(data, selector, None))?;

    let all_ks: Vec<u32> = (range.a()..=range.b()).collect();
    let ks = subsample_observations(&all_ks, stride)?;
    let mut points = Vec::with_capacity(ks.len());
    for &k in &ks {
        let value = evaluate_subset(data, ranking.prefix(k as usize), evaluator)
            .map_err(run_context(data, selector, Some(k as usize)))?;
        points.push((k, value));
    }
    let curve = ObservationCurve::new(points)?;

    let fsdem = fsdem_score(&curve, &range)?;
    let stability = stability_score(&curve, &range)?;
    let derivative = finite_differences(&curve, &range)?;

    // BFI compares the fitness at the curve's best observed size against the
    // full-feature baseline.
    let &(k_best, best_value) = curve
        .points()
        .iter()
        .reduce(|best, point| if point.1 > best.1 { point } else { best })
        .expect("curve has points");
    let baseline_value = if range.b() as usize == d {
        curve.points().last().expect("curve has points").1
    } else {
        evaluate_subset(data, ranking.prefix(d), evaluator)
            .map_err(run_context(data, selector, Some(d)))?
    };
    let fitness_selected = fitness(best_value, k_best as usize, d, weights)?;
    let fitness_baseline = fitness(baseline_value, d, d, weights)?;

    let mut warnings = Vec::new();
    if data.num_classes() < 2 {
        warnings.push("dataset has a single class; selector scores are degenerate".to_string());
    }
    if evaluator.measure_id == MeasureId::Accuracy {
        let (folds, reduced) = effective_folds(data.labels(), evaluator.folds);
        if reduced {
            warnings.push(format!(
                "smallest class is below the requested fold count; folds reduced to {folds}"
            ));
        }
    }

    Ok(RunReport {
        dataset_id: data.dataset_id().to_string(),
        selector_id: selector.selector_id.to_string(),
        measure_id: evaluator.measure_id.to_string(),
        range,
        stride,
        fsdem,
        stability,
        bfi: BfiReport {
            value: bfi(fitness_selected, fitness_baseline),
            k_best,
            k_c: weights.k_c,
            k_p: weights.k_p,
        },
        nogueira: None,
        kuncheva: None,
        curve: curve.points().to_vec(),
        derivative,
        seed: selector.seed,
        wall_time_ms: None,
        version: VERSION.to_string(),
        observation_count: ks.len(),
        config_fingerprint: config_fingerprint(
            data.dataset_id(),
            selector,
            evaluator,
            &range,
            stride,
            weights,
        ),
        warnings,
    })
}

/// Overlap-stability indices of one selector under noisy repetition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityStudy {
    pub nogueira: f64,
    pub kuncheva: f64,
}

/// Ranks `repeats` noisy copies of the dataset (noise and selector seeds fan
/// out per repeat), takes the `k`-prefixes and computes both overlap
/// indices.
pub fn run_stability_study(
    data: &Dataset,
    selector: &SelectorConfig,
    repeats: usize,
    noise: &NoiseSpec,
    k: usize,
) -> Result<StabilityStudy> {
    if repeats < 2 {
        return Err(Error::InvalidInput(format!(
            "stability study needs at least 2 repeats, got {repeats}"
        )));
    }
    if k == 0 || k >= data.d() {
        return Err(Error::InvalidInput(format!(
            "k must be in 1..{} for the overlap indices, got {k}",
            data.d()
        )));
    }
    let mut subsets = Vec::with_capacity(repeats);
    let mut sequences = Vec::with_capacity(repeats);
    for repeat in 0..repeats {
        let tag = repeat.to_string();
        let noisy = inject_noise(
            data,
            &NoiseSpec {
                level: noise.level,
                seed: mix(noise.seed, &["noise", &tag]),
            },
        );
        let cfg = SelectorConfig {
            seed: mix(selector.seed, &["repeat", &tag]),
            ..selector.clone()
        };
        let ranking = rank(&noisy, &cfg).map_err(run_context(data, selector, Some(k)))?;
        subsets.push(ranking.prefix(k).to_vec());
        sequences.push(ranking.order().to_vec());
    }
    let matrix = SelectionMatrix::from_subsets(&subsets, data.d())?;
    let family = RankedSubsetFamily::new(sequences, data.d())?;
    Ok(StabilityStudy {
        nogueira: nogueira_stability(&matrix)?,
        kuncheva: kuncheva_stability(&family, k)?,
    })
}

/// Wire format of a single-sweep request, shared by the HTTP service and
/// the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub dataset: DatasetSource,
    #[serde(default)]
    pub selector: SelectorConfig,
    #[serde(default)]
    pub evaluator: EvaluatorConfig,
    /// Lower integration bound; defaults to 1.
    #[serde(default)]
    pub a: Option<u32>,
    /// Upper integration bound; defaults to the feature count.
    #[serde(default)]
    pub b: Option<u32>,
    #[serde(default = "default_stride")]
    pub stride: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub weights: FitnessWeights,
}

/// Loads the dataset, fans the request seed out to the selector and the
/// evaluator, runs the sweep and stamps the wall time.
pub fn execute_sweep(spec: &SweepSpec) -> Result<RunReport> {
    let started = Instant::now();
    let data = spec.dataset.resolve(spec.seed)?;
    let range = resolve_range(spec.a, spec.b, data.d())?;
    let selector = SelectorConfig {
        seed: mix(spec.seed, &["selector"]),
        ..spec.selector.clone()
    };
    let evaluator = EvaluatorConfig {
        seed: mix(spec.seed, &["evaluator"]),
        ..spec.evaluator.clone()
    };
    let mut report = run_sweep(&data, &selector, &evaluator, range, spec.stride, &spec.weights)?;
    report.seed = spec.seed;
    report.wall_time_ms = Some(started.elapsed().as_millis() as u64);
    Ok(report)
}

pub(crate) fn resolve_range(a: Option<u32>, b: Option<u32>, d: usize) -> Result<MetricRange> {
    if d < 2 {
        return Err(Error::InvalidInput(
            "sweeps need at least 2 features to form a range".into(),
        ));
    }
    MetricRange::new(a.unwrap_or(1), b.unwrap_or(d as u32))
}

/// Wire format of a stability-study request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilitySpec {
    pub dataset: DatasetSource,
    #[serde(default)]
    pub selector: SelectorConfig,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    /// Noise level as a fraction of each feature's standard deviation.
    #[serde(default)]
    pub noise: f64,
    /// Subset size whose overlap is scored; defaults to half the features.
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

/// Result of a stability-study request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub dataset_id: String,
    pub selector_id: String,
    pub k: usize,
    pub repeats: usize,
    pub noise: f64,
    pub nogueira: f64,
    pub kuncheva: f64,
    pub seed: u64,
    pub version: String,
}

/// Subset size used when a study does not name one: half the features,
/// clamped into the domain of the overlap indices.
pub fn default_study_k(d: usize) -> usize {
    (d / 2).clamp(1, d.saturating_sub(1).max(1))
}

pub fn execute_stability(spec: &StabilitySpec) -> Result<StabilityReport> {
    let data = spec.dataset.resolve(spec.seed)?;
    let k = spec.k.unwrap_or_else(|| default_study_k(data.d()));
    let selector = SelectorConfig {
        seed: mix(spec.seed, &["selector"]),
        ..spec.selector.clone()
    };
    let noise = NoiseSpec::new(spec.noise, mix(spec.seed, &["noise"]))?;
    let study = run_stability_study(&data, &selector, spec.repeats, &noise, k)?;
    Ok(StabilityReport {
        dataset_id: data.dataset_id().to_string(),
        selector_id: selector.selector_id.to_string(),
        k,
        repeats: spec.repeats,
        noise: spec.noise,
        nogueira: study.nogueira,
        kuncheva: study.kuncheva,
        seed: spec.seed,
        version: VERSION.to_string(),
    })
}
