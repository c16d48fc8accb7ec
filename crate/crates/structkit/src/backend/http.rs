//! HTTP client for external inference services.
//!
//! Wire protocol: POST `/v1/generate` with JSON body
//! `{"input", "length_penalty", "min_target_length", "max_target_length"}`;
//! the service responds `{"output": string}`. Any non-200 status maps to
//! `BackendError::Unavailable`.

use super::{BackendError, DecodeConfig, GenerationBackend, GenerationRequest, GenerationResponse};
use crate::codec::EncodedExample;
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Environment variable naming the generation endpoint.
pub const BACKEND_URL_ENV: &str = "STRUCTKIT_BACKEND_URL";

pub const GENERATE_PATH: &str = "/v1/generate";

#[derive(Debug, Clone, Serialize)]
struct WireRequest<'a> {
    input: &'a str,
    length_penalty: f64,
    min_target_length: usize,
    max_target_length: usize,
}

#[derive(Debug, Clone, Deserialize)]
struct WireResponse {
    output: String,
}

#[derive(Debug, Clone)]
pub struct HttpBackendConfig {
    /// Service base URL; `/v1/generate` is appended unless already present.
    pub url: String,
    pub timeout: Duration,
    /// Retries after the first attempt; total attempts = max_retries + 1.
    pub max_retries: u32,
    pub backoff_base: Duration,
    pub backoff_max: Duration,
}

impl HttpBackendConfig {
    pub fn new(url: impl Into<String>) -> Self {
        HttpBackendConfig {
            url: url.into(),
            timeout: Duration::from_secs(60),
            max_retries: 3,
            backoff_base: Duration::from_millis(100),
            backoff_max: Duration::from_secs(10),
        }
    }

    /// Reads the endpoint from `STRUCTKIT_BACKEND_URL`.
    pub fn from_env() -> Option<Self> {
        std::env::var(BACKEND_URL_ENV).ok().map(Self::new)
    }

    fn endpoint(&self) -> String {
        let base = self.url.trim_end_matches('/');
        if base.ends_with(GENERATE_PATH) {
            base.to_string()
        } else {
            format!("{base}{GENERATE_PATH}")
        }
    }
}

pub struct HttpBackend {
    config: HttpBackendConfig,
    endpoint: String,
    backend_id: String,
    client: reqwest::blocking::Client,
}

impl HttpBackend {
    pub fn new(config: HttpBackendConfig) -> Result<Self, BackendError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(config.timeout)
            .build()
            .map_err(|e| BackendError::InvalidConfig {
                reason: format!("failed to build HTTP client: {e}"),
            })?;
        let endpoint = config.endpoint();
        Ok(HttpBackend {
            backend_id: format!("http:{endpoint}"),
            endpoint,
            config,
            client,
        })
    }

    fn attempt(&self, request: &GenerationRequest) -> Result<String, BackendError> {
        let body = WireRequest {
            input: &request.input,
            length_penalty: request.config.length_penalty,
            min_target_length: request.config.min_target_length,
            max_target_length: request.config.max_target_length,
        };
        let response = self
            .client
            .post(&self.endpoint)
            .json(&body)
            .send()
            .map_err(|e| {
                if e.is_timeout() {
                    BackendError::Timeout {
                        detail: format!("{} ({e})", self.endpoint),
                    }
                } else {
                    BackendError::Unavailable {
                        detail: format!("{} ({e})", self.endpoint),
                    }
                }
            })?;
        let status = response.status();
        if !status.is_success() {
            return Err(BackendError::Unavailable {
                detail: format!("{} returned {status}", self.endpoint),
            });
        }
        let wire: WireResponse = response.json().map_err(|e| BackendError::Unavailable {
            detail: format!("malformed response from {}: {e}", self.endpoint),
        })?;
        Ok(wire.output)
    }
}

impl GenerationBackend for HttpBackend {
    fn backend_id(&self) -> &str {
        &self.backend_id
    }

    fn generate(&self, request: &GenerationRequest) -> Result<GenerationResponse, BackendError> {
        let started = Instant::now();
        let mut attempt = 0u32;
        loop {
            match self.attempt(request) {
                Ok(output) => {
                    return Ok(GenerationResponse {
                        output,
                        latency: started.elapsed(),
                        backend_id: self.backend_id.clone(),
                    })
                }
                Err(err) if err.is_retryable() && attempt < self.config.max_retries => {
                    let exp = self
                        .config
                        .backoff_base
                        .saturating_mul(2u32.saturating_pow(attempt));
                    let delay = exp.min(self.config.backoff_max);
                    log::warn!(
                        "request {} attempt {}/{} failed ({err}); retrying in {delay:?}",
                        request.id,
                        attempt + 1,
                        self.config.max_retries + 1,
                    );
                    std::thread::sleep(delay);
                    attempt += 1;
                }
                Err(err) => {
                    log::error!(
                        "request {} failed after {} attempt(s): {err}",
                        request.id,
                        attempt + 1
                    );
                    return Err(err);
                }
            }
        }
    }
}

/// Runs a batch of requests with up to `concurrency` in flight, re-associating
/// results with examples by id; completion order is unconstrained.
pub type BatchResult = (String, Result<String, BackendError>);

pub fn run_batch(
    jobs: &[(EncodedExample, DecodeConfig)],
    backend: &dyn GenerationBackend,
    concurrency: usize,
) -> Vec<BatchResult> {
    let workers = concurrency.max(1).min(jobs.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<BatchResult>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::SeqCst);
                if idx >= jobs.len() {
                    break;
                }
                let (example, config) = &jobs[idx];
                let result = super::generate(example, *config, backend);
                slots.lock().unwrap()[idx] = Some((example.id.clone(), result));
            });
        }
    });

    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|slot| slot.expect("every job slot filled"))
        .collect()
}
