//! End-to-end exercise of every endpoint through a real listener and the
//! typed client.

use fsdem_client::{Client, ClientError};
use fsdem_core::api::{
    BfiRequest, CurveMetricsRequest, KunchevaRequest, NogueiraRequest, SubsetScore,
};
use fsdem_core::data::NoiseSpec;
use fsdem_core::evaluators::{EvaluatorConfig, MeasureId};
use fsdem_core::harness::{
    BenchmarkConfig, DatasetSource, StabilitySpec, SweepSpec,
};
use fsdem_core::metrics::FitnessWeights;
use fsdem_core::selectors::{SelectorConfig, SelectorId};

async fn start() -> Client {
    let (url, _handle) = fsdem_server::spawn_local().await.expect("bind loopback");
    Client::new(url)
}

#[tokio::test]
async fn health_reports_version() {
    let client = start().await;
    let health = client.health().await.unwrap();
    assert_eq!(health.status, "ok");
    assert_eq!(health.version, fsdem_core::VERSION);
}

#[tokio::test]
async fn curve_metrics_endpoint_computes_the_examples() {
    let client = start().await;
    let response = client
        .curve_metrics(&CurveMetricsRequest {
            curve: vec![(3, 0.9), (1, 0.5), (2, 0.7)],
            a: None,
            b: None,
            bounds: None,
        })
        .await
        .unwrap();
    assert!((response.fsdem - 0.7).abs() < 1e-12);
    assert!((response.stability - 0.2).abs() < 1e-12);
    assert!((response.integral - 1.4).abs() < 1e-12);
    assert_eq!(response.derivative.len(), 3);
}

#[tokio::test]
async fn invalid_curve_maps_to_bad_request() {
    let client = start().await;
    let err = client
        .curve_metrics(&CurveMetricsRequest {
            curve: vec![(1, 0.5), (1, 0.6)],
            a: None,
            b: None,
            bounds: None,
        })
        .await
        .unwrap_err();
    match err {
        ClientError::Api { status, message } => {
            assert_eq!(status, 400);
            assert!(message.contains("duplicate"), "unexpected message {message}");
        }
        other => panic!("expected API error, got {other}"),
    }
}

#[tokio::test]
async fn overlap_metrics_endpoints() {
    let client = start().await;
    let nogueira = client
        .nogueira(&NogueiraRequest {
            rows: vec![vec![0, 1, 0, 1, 1, 0], vec![0, 0, 1, 1, 0, 1]],
        })
        .await
        .unwrap();
    assert!((nogueira.value - (-1.0 / 3.0)).abs() < 1e-9);

    let kuncheva = client
        .kuncheva(&KunchevaRequest {
            sequences: vec![vec![0, 1, 2, 3, 4, 5], vec![0, 1, 2, 5, 4, 3]],
            d: 6,
            k: 3,
        })
        .await
        .unwrap();
    assert_eq!(kuncheva.value, 1.0);
}

#[tokio::test]
async fn bfi_endpoint_matches_the_closed_form() {
    let client = start().await;
    let response = client
        .bfi(&BfiRequest {
            selected: SubsetScore {
                measure_value: 0.9,
                selected_count: 3,
            },
            baseline: SubsetScore {
                measure_value: 0.85,
                selected_count: 6,
            },
            d: 6,
            weights: FitnessWeights::default(),
        })
        .await
        .unwrap();
    assert!((response.fitness_selected - 0.77225).abs() < 1e-5);
    assert!((response.fitness_baseline - 0.665).abs() < 1e-12);
    assert!((response.bfi - 0.10725).abs() < 1e-5);
}

#[tokio::test]
async fn sweep_and_stability_roundtrip() {
    let client = start().await;
    let sweep = client
        .sweep(&SweepSpec {
            dataset: DatasetSource::wealth(60),
            selector: SelectorConfig::new(SelectorId::InfoGain),
            evaluator: EvaluatorConfig::new(MeasureId::Accuracy),
            a: None,
            b: None,
            stride: 1,
            seed: 5,
            weights: FitnessWeights::default(),
        })
        .await
        .unwrap();
    assert_eq!(sweep.dataset_id, "wealth");
    assert_eq!(sweep.curve.len(), 6);
    assert!(sweep.wall_time_ms.is_some());

    let stability = client
        .stability(&StabilitySpec {
            dataset: DatasetSource::wealth(60),
            selector: SelectorConfig::new(SelectorId::InfoGain),
            repeats: 4,
            noise: 0.0,
            k: Some(3),
            seed: 5,
        })
        .await
        .unwrap();
    assert_eq!(stability.nogueira, 1.0);
    assert_eq!(stability.kuncheva, 1.0);
}

#[tokio::test]
async fn benchmark_endpoint_runs_and_writes_reports() {
    let client = start().await;
    let dir = tempfile::tempdir().unwrap();
    let config = BenchmarkConfig {
        datasets: vec![DatasetSource::wealth(40)],
        selectors: vec![
            SelectorConfig::new(SelectorId::Random),
            SelectorConfig::new(SelectorId::Chi2),
        ],
        evaluators: vec![EvaluatorConfig::new(MeasureId::Accuracy)],
        range: None,
        stride: 1,
        repeats: 0,
        noise: NoiseSpec { level: 0.0, seed: 0 },
        output_dir: dir.path().to_path_buf(),
        master_seed: 3,
        fitness: FitnessWeights::default(),
    };
    let outcome = client.benchmark(&config, Some(2)).await.unwrap();
    assert_eq!(outcome.reports.len(), 2);
    assert!(outcome.failures.is_empty());
    assert!(dir.path().join("summary.csv").exists());
    assert!(dir.path().join("wealth__random__accuracy.json").exists());
}

#[tokio::test]
async fn dummy_endpoint_returns_csv() {
    let client = start().await;
    let csv = client.dummy(30, 9).await.unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "age,salary_eur,salary_usd,residence_size,distance_km,distance_miles,wealth"
    );
    assert_eq!(lines.count(), 30);
}
