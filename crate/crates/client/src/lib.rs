//! Thin typed client for the evaluation service. Each method wraps one
//! endpoint; request and response bodies are the shared types from
//! `fsdem_core::api` and `fsdem_core::harness`.

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use fsdem_core::api::{
    BenchmarkRequest, BfiRequest, BfiResponse, CurveMetricsRequest, CurveMetricsResponse,
    DummyRequest, ErrorBody, HealthResponse, KunchevaRequest, NogueiraRequest, ValueResponse,
};
use fsdem_core::harness::{
    BenchmarkConfig, BenchmarkOutcome, RunReport, StabilityReport, StabilitySpec, SweepSpec,
};

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("transport error: {0}")]
    Transport(#[from] reqwest::Error),

    /// The service answered with an error status; `message` carries its
    /// `{"error": ...}` body when one was present.
    #[error("service returned {status}: {message}")]
    Api { status: u16, message: String },
}

pub type Result<T> = std::result::Result<T, ClientError>;

/// Client bound to one service base URL (e.g. `http://127.0.0.1:7878`).
#[derive(Debug, Clone)]
pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    pub fn new(base_url: impl Into<String>) -> Self {
        let mut base = base_url.into();
        while base.ends_with('/') {
            base.pop();
        }
        Client {
            base,
            http: reqwest::Client::new(),
        }
    }

    pub fn base_url(&self) -> &str {
        &self.base
    }

    async fn check(response: reqwest::Response) -> Result<reqwest::Response> {
        let status = response.status();
        if status.is_success() {
            return Ok(response);
        }
        let message = match response.json::<ErrorBody>().await {
            Ok(body) => body.error,
            Err(_) => status.to_string(),
        };
        Err(ClientError::Api {
            status: status.as_u16(),
            message,
        })
    }

    async fn post_json<Req: Serialize, Resp: DeserializeOwned>(
        &self,
        path: &str,
        request: &Req,
    ) -> Result<Resp> {
        let response = self
            .http
            .post(format!("{}{path}", self.base))
            .json(request)
            .send()
            .await?;
        Ok(Self::check(response).await?.json().await?)
    }

    pub async fn health(&self) -> Result<HealthResponse> {
        let response = self
            .http
            .get(format!("{}/api/v1/health", self.base))
            .send()
            .await?;
        Ok(Self::check(response).await?.json().await?)
    }

    pub async fn curve_metrics(
        &self,
        request: &CurveMetricsRequest,
    ) -> Result<CurveMetricsResponse> {
        self.post_json("/api/v1/metrics/fsdem", request).await
    }

    pub async fn nogueira(&self, request: &NogueiraRequest) -> Result<ValueResponse> {
        self.post_json("/api/v1/metrics/nogueira", request).await
    }

    pub async fn kuncheva(&self, request: &KunchevaRequest) -> Result<ValueResponse> {
        self.post_json("/api/v1/metrics/kuncheva", request).await
    }

    pub async fn bfi(&self, request: &BfiRequest) -> Result<BfiResponse> {
        self.post_json("/api/v1/metrics/bfi", request).await
    }

    pub async fn sweep(&self, spec: &SweepSpec) -> Result<RunReport> {
        self.post_json("/api/v1/sweep", spec).await
    }

    pub async fn stability(&self, spec: &StabilitySpec) -> Result<StabilityReport> {
        self.post_json("/api/v1/stability", spec).await
    }

    pub async fn benchmark(
        &self,
        config: &BenchmarkConfig,
        workers: Option<usize>,
    ) -> Result<BenchmarkOutcome> {
        let request = BenchmarkRequest {
            config: config.clone(),
            workers,
        };
        self.post_json("/api/v1/benchmark", &request).await
    }

    /// Generates the wealth dummy dataset; returns CSV text.
    pub async fn dummy(&self, n: usize, seed: u64) -> Result<String> {
        let response = self
            .http
            .post(format!("{}/api/v1/dummy", self.base))
            .json(&DummyRequest { n, seed })
            .send()
            .await?;
        Ok(Self::check(response).await?.text().await?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_slashes_are_trimmed() {
        let client = Client::new("http://localhost:7878///");
        assert_eq!(client.base_url(), "http://localhost:7878");
    }
}
