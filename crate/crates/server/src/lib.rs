//! HTTP/JSON service over the evaluation toolkit.
//!
//! Endpoints, all under `/api/v1`:
//!
//! | method, path            | body → response                              |
//! |-------------------------|----------------------------------------------|
//! | GET  `/health`          | — → `HealthResponse`                          |
//! | POST `/metrics/fsdem`   | `CurveMetricsRequest` → `CurveMetricsResponse`|
//! | POST `/metrics/nogueira`| `NogueiraRequest` → `ValueResponse`           |
//! | POST `/metrics/kuncheva`| `KunchevaRequest` → `ValueResponse`           |
//! | POST `/metrics/bfi`     | `BfiRequest` → `BfiResponse`                  |
//! | POST `/sweep`           | `SweepSpec` → `RunReport`                     |
//! | POST `/stability`       | `StabilitySpec` → `StabilityReport`           |
//! | POST `/benchmark`       | `BenchmarkRequest` → `BenchmarkOutcome`       |
//! | POST `/dummy`           | `DummyRequest` → CSV text                     |
//!
//! Parameter errors map to 400, unreadable or malformed data to 422, I/O
//! failures to 500; every error body is `{"error": "..."}`.

use axum::extract::Json;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;

use fsdem_core::api::{
    BenchmarkRequest, BfiRequest, BfiResponse, CurveMetricsRequest, CurveMetricsResponse,
    DummyRequest, ErrorBody, HealthResponse, KunchevaRequest, NogueiraRequest, ValueResponse,
};
use fsdem_core::data::{dataset_to_csv, generate_wealth_dummy};
use fsdem_core::harness::{
    execute_stability, execute_sweep, run_benchmark, BenchmarkOutcome, RunReport, StabilityReport,
    StabilitySpec, SweepSpec,
};
use fsdem_core::metrics::{
    bfi, fitness, finite_differences, fsdem_score, kuncheva_stability, nogueira_stability,
    stability_score, trapezoid_integral, RankedSubsetFamily, SelectionMatrix,
};
use fsdem_core::Error as CoreError;

/// Error wrapper implementing the HTTP mapping.
struct ApiError(CoreError);

impl From<CoreError> for ApiError {
    fn from(e: CoreError) -> Self {
        ApiError(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match &self.0 {
            CoreError::Io { .. } => StatusCode::INTERNAL_SERVER_ERROR,
            e if e.is_data_error() => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::BAD_REQUEST,
        };
        let body = Json(ErrorBody {
            error: self.0.to_string(),
        });
        (status, body).into_response()
    }
}

type ApiResult<T> = std::result::Result<T, ApiError>;

async fn health() -> Json<HealthResponse> {
    Json(HealthResponse {
        status: "ok".to_string(),
        version: fsdem_core::VERSION.to_string(),
    })
}

async fn curve_metrics(
    Json(request): Json<CurveMetricsRequest>,
) -> ApiResult<Json<CurveMetricsResponse>> {
    let (curve, range) = request.build()?;
    Ok(Json(CurveMetricsResponse {
        fsdem: fsdem_score(&curve, &range)?,
        stability: stability_score(&curve, &range)?,
        integral: trapezoid_integral(&curve, &range)?,
        range,
        derivative: finite_differences(&curve, &range)?,
    }))
}

async fn nogueira(Json(request): Json<NogueiraRequest>) -> ApiResult<Json<ValueResponse>> {
    let matrix = SelectionMatrix::new(request.rows_as_bools()?)?;
    Ok(Json(ValueResponse {
        value: nogueira_stability(&matrix)?,
    }))
}

async fn kuncheva(Json(request): Json<KunchevaRequest>) -> ApiResult<Json<ValueResponse>> {
    let family = RankedSubsetFamily::new(request.sequences, request.d)?;
    Ok(Json(ValueResponse {
        value: kuncheva_stability(&family, request.k)?,
    }))
}

async fn bfi_endpoint(Json(request): Json<BfiRequest>) -> ApiResult<Json<BfiResponse>> {
    let selected = fitness(
        request.selected.measure_value,
        request.selected.selected_count,
        request.d,
        &request.weights,
    )?;
    let baseline = fitness(
        request.baseline.measure_value,
        request.baseline.selected_count,
        request.d,
        &request.weights,
    )?;
    Ok(Json(BfiResponse {
        fitness_selected: selected,
        fitness_baseline: baseline,
        bfi: bfi(selected, baseline),
    }))
}

/// CPU-bound work runs off the async workers.
async fn blocking<T, F>(job: F) -> ApiResult<T>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, CoreError> + Send + 'static,
{
    tokio::task::spawn_blocking(job)
        .await
        .map_err(|e| ApiError(CoreError::InvalidInput(format!("worker panicked: {e}"))))?
        .map_err(ApiError)
}

async fn sweep(Json(spec): Json<SweepSpec>) -> ApiResult<Json<RunReport>> {
    Ok(Json(blocking(move || execute_sweep(&spec)).await?))
}

async fn stability(Json(spec): Json<StabilitySpec>) -> ApiResult<Json<StabilityReport>> {
    Ok(Json(blocking(move || execute_stability(&spec)).await?))
}

async fn benchmark(Json(request): Json<BenchmarkRequest>) -> ApiResult<Json<BenchmarkOutcome>> {
    let workers = request.workers.unwrap_or_else(default_workers);
    Ok(Json(
        blocking(move || run_benchmark(&request.config, workers)).await?,
    ))
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

async fn dummy(Json(request): Json<DummyRequest>) -> ApiResult<Response> {
    let csv = blocking(move || {
        let data = generate_wealth_dummy(request.n, request.seed)?;
        Ok(dataset_to_csv(&data, "wealth"))
    })
    .await?;
    Ok(([(header::CONTENT_TYPE, "text/csv")], csv).into_response())
}

/// The full application router.
pub fn router() -> Router {
    Router::new()
        .route("/api/v1/health", get(health))
        .route("/api/v1/metrics/fsdem", post(curve_metrics))
        .route("/api/v1/metrics/nogueira", post(nogueira))
        .route("/api/v1/metrics/kuncheva", post(kuncheva))
        .route("/api/v1/metrics/bfi", post(bfi_endpoint))
        .route("/api/v1/sweep", post(sweep))
        .route("/api/v1/stability", post(stability))
        .route("/api/v1/benchmark", post(benchmark))
        .route("/api/v1/dummy", post(dummy))
}

/// Serves the API on an already-bound listener until the task is dropped.
pub async fn serve(listener: tokio::net::TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}

/// Binds an ephemeral local listener and serves the API on it in a
/// background task. Returns the base URL. Used by the CLI's local mode and
/// by tests.
pub async fn spawn_local() -> std::io::Result<(String, tokio::task::JoinHandle<()>)> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", 0)).await?;
    let addr = listener.local_addr()?;
    let handle = tokio::spawn(async move {
        if let Err(e) = axum::serve(listener, router()).await {
            eprintln!("server error: {e}");
        }
    });
    Ok((format!("http://{addr}"), handle))
}
