use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::emit::{write_report_files, write_summary_files};
use super::sweep::{default_study_k, resolve_range, run_stability_study, run_sweep};
use super::{BenchmarkConfig, RunReport};
use crate::data::{Dataset, NoiseSpec};
use crate::error::{Error, Result};
use crate::evaluators::EvaluatorConfig;
use crate::seed::mix;
use crate::selectors::SelectorConfig;

/// A run that did not produce a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunFailure {
    pub dataset_id: String,
    pub selector_id: String,
    pub measure_id: String,
    pub error: String,
}

/// Mean per-selector metrics over the successful runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectorSummary {
    pub selector_id: String,
    pub runs: usize,
    pub mean_fsdem: f64,
    pub mean_stability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkSummary {
    pub total_runs: usize,
    pub failed_runs: usize,
    pub selectors: Vec<SelectorSummary>,
}

/// Everything a benchmark produced: per-run reports (in job order), the
/// failures that were skipped over, and the aggregate summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkOutcome {
    pub reports: Vec<RunReport>,
    pub failures: Vec<RunFailure>,
    pub summary: BenchmarkSummary,
}

struct Job {
    dataset_index: usize,
    selector: SelectorConfig,
    evaluator: EvaluatorConfig,
}

/// Runs the full datasets × selectors × evaluators cross product on a
/// bounded pool of `workers` threads. Per-run seeds fan out from the master
/// seed and the job's identifiers, so results are independent of scheduling
/// and pool size; report files are written as runs complete. A failed run is
/// recorded and the remaining runs proceed.
pub fn run_benchmark(config: &BenchmarkConfig, workers: usize) -> Result<BenchmarkOutcome> {
    config.validate()?;
    std::fs::create_dir_all(&config.output_dir)
        .map_err(|e| Error::io(format!("creating {}", config.output_dir.display()), e))?;

    // Datasets load once, not per job. Dataset seeds depend only on the
    // dataset id so that adding a selector never changes the data.
    let datasets: Vec<(String, Result<Dataset>)> = config
        .datasets
        .iter()
        .map(|source| {
            let id = source.id();
            let data = source.resolve(mix(config.master_seed, &[&id, "dataset"]));
            (id, data)
        })
        .collect();

    let mut jobs = Vec::new();
    for dataset_index in 0..datasets.len() {
        for selector in &config.selectors {
            for evaluator in &config.evaluators {
                jobs.push(Job {
                    dataset_index,
                    selector: selector.clone(),
                    evaluator: evaluator.clone(),
                });
            }
        }
    }

    let cursor = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<RunReport>>>> =
        Mutex::new((0..jobs.len()).map(|_| None).collect());
    let writer = Mutex::new(());
    std::thread::scope(|scope| {
        for _ in 0..workers.max(1) {
            scope.spawn(|| loop {
                let index = cursor.fetch_add(1, Ordering::SeqCst);
                if index >= jobs.len() {
                    break;
                }
                let result = execute_job(config, &datasets, &jobs[index]);
                if let Ok(report) = &result {
                    // One writer at a time; file contents do not depend on
                    // completion order.
                    let _guard = writer.lock().expect("writer lock");
                    if let Err(e) = write_report_files(report, &config.output_dir) {
                        let mut slots = results.lock().expect("results lock");
                        slots[index] = Some(Err(e));
                        continue;
                    }
                }
                results.lock().expect("results lock")[index] = Some(result);
            });
        }
    });

    let mut reports = Vec::new();
    let mut failures = Vec::new();
    let slots = results.into_inner().expect("results lock");
    for (job, slot) in jobs.iter().zip(slots) {
        let result = slot.expect("every job ran");
        match result {
            Ok(report) => reports.push(report),
            Err(error) => failures.push(RunFailure {
                dataset_id: datasets[job.dataset_index].0.clone(),
                selector_id: job.selector.selector_id.to_string(),
                measure_id: job.evaluator.measure_id.to_string(),
                error: error.to_string(),
            }),
        }
    }

    let summary = summarize(&reports, failures.len());
    write_summary_files(&reports, &failures, &summary, &config.output_dir)?;
    Ok(BenchmarkOutcome {
        reports,
        failures,
        summary,
    })
}

fn execute_job(
    config: &BenchmarkConfig,
    datasets: &[(String, Result<Dataset>)],
    job: &Job,
) -> Result<RunReport> {
    let (dataset_id, data) = &datasets[job.dataset_index];
    let data = match data {
        Ok(data) => data,
        Err(e) => {
            return Err(Error::RunFailed {
                dataset: dataset_id.clone(),
                selector: job.selector.selector_id.to_string(),
                k: None,
                source: Box::new(Error::Ingestion(e.to_string())),
            })
        }
    };
    let job_seed = mix(
        config.master_seed,
        &[
            dataset_id,
            job.selector.selector_id.as_str(),
            job.evaluator.measure_id.as_str(),
        ],
    );
    let selector = SelectorConfig {
        seed: mix(job_seed, &["selector"]),
        ..job.selector.clone()
    };
    let evaluator = EvaluatorConfig {
        seed: mix(job_seed, &["evaluator"]),
        ..job.evaluator.clone()
    };
    let range = match config.range {
        Some((a, b)) => resolve_range(Some(a), Some(b), data.d())?,
        None => resolve_range(None, None, data.d())?,
    };
    let mut report = run_sweep(data, &selector, &evaluator, range, config.stride, &config.fitness)?;
    report.seed = job_seed;

    if config.repeats >= 2 && data.d() >= 2 {
        let noise = NoiseSpec {
            level: config.noise.level,
            seed: mix(job_seed, &["noise", &config.noise.seed.to_string()]),
        };
        let study = run_stability_study(
            data,
            &selector,
            config.repeats,
            &noise,
            default_study_k(data.d()),
        )?;
        report.nogueira = Some(study.nogueira);
        report.kuncheva = Some(study.kuncheva);
    }
    Ok(report)
}

fn summarize(reports: &[RunReport], failed: usize) -> BenchmarkSummary {
    let mut by_selector: BTreeMap<&str, (usize, f64, f64)> = BTreeMap::new();
    for report in reports {
        let entry = by_selector
            .entry(report.selector_id.as_str())
            .or_insert((0, 0.0, 0.0));
        entry.0 += 1;
        entry.1 += report.fsdem;
        entry.2 += report.stability;
    }
    BenchmarkSummary {
        total_runs: reports.len() + failed,
        failed_runs: failed,
        selectors: by_selector
            .into_iter()
            .map(|(id, (runs, fsdem, stability))| SelectorSummary {
                selector_id: id.to_string(),
                runs,
                mean_fsdem: fsdem / runs as f64,
                mean_stability: stability / runs as f64,
            })
            .collect(),
    }
}
