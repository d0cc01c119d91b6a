//! Stateless JSON-over-HTTP evaluation service.
//!
//! | Method | Path              | Body                | Response          |
//! |--------|-------------------|---------------------|-------------------|
//! | GET    | `/api/presets`    |                     | preset list       |
//! | POST   | `/api/evaluate`   | [`EvaluateRequest`] | [`EvaluateResponse`] |
//! | POST   | `/api/sweep`      | [`SweepRequest`]    | [`SweepSurface`]  |
//! | POST   | `/api/montecarlo` | [`MonteCarloRequest`] | [`MCResult`]    |
//!
//! Malformed or invalid bodies get 400, requests over the resource limits
//! get 422. Error bodies are `{"error": ..., "details": [...]}`.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

use crate::error::Error;
use crate::model::{breakout_prob, crossing_times, cumulative_risk, sample_trajectory, ModelParams};
use crate::montecarlo::{simulate, MCConfig, MCResult};
use crate::scenario::{display_name, DetPackage, PetRegime, PresetCatalog};
use crate::sensitivity::{oat_sweep, robustness_base, SweepGrid, SweepParameter, SweepSurface};

pub const MAX_HORIZON: f64 = 200.0;
pub const MAX_RESOLUTION: f64 = 1e4;
pub const MAX_TRIALS: u64 = 10_000_000;
pub const MAX_SWEEP_VALUES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ServiceConfig {
    /// Send permissive cross-origin headers.
    pub cors: bool,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self { cors: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresetEntry {
    pub name: String,
    pub display_name: String,
    pub pet_regime: PetRegime,
    pub det_package: DetPackage,
    pub opportunism: bool,
    pub params: ModelParams,
}

fn default_resolution() -> f64 {
    100.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluateRequest {
    pub params: ModelParams,
    #[serde(default = "default_resolution")]
    pub resolution: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub t: Vec<f64>,
    pub p: Vec<f64>,
    pub d: Vec<f64>,
    pub rai: Vec<f64>,
    pub pr_detect: Vec<f64>,
    pub hazard: Vec<f64>,
    pub cumulative_r: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub r: f64,
    pub p: f64,
    pub crossing: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluateResponse {
    pub series: Series,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRequest {
    pub parameter: String,
    #[serde(default)]
    pub values: Option<Vec<f64>>,
    #[serde(default)]
    pub regimes: Option<Vec<PetRegime>>,
    #[serde(default)]
    pub base: Option<ModelParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonteCarloRequest {
    pub params: ModelParams,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub max_rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub error: String,
    pub details: Vec<String>,
}

impl ApiError {
    fn bad_request(error: &str, details: Vec<String>) -> Self {
        Self { status: 400, error: error.into(), details }
    }

    fn too_large(detail: String) -> Self {
        Self { status: 422, error: "request exceeds resource limits".into(), details: vec![detail] }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match e {
            Error::ComputeFault(_) => {
                Self { status: 500, error: "computation fault".into(), details: vec![e.to_string()] }
            }
            other => Self::bad_request("invalid request", vec![other.to_string()]),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

type ApiResult<T> = std::result::Result<Json<T>, ApiError>;

fn parse<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request("malformed request body", vec![e.to_string()]))
}

fn guard_params(p: &ModelParams) -> Result<(), ApiError> {
    p.validate()?;
    if p.horizon > MAX_HORIZON {
        return Err(ApiError::too_large(format!("horizon {} exceeds {MAX_HORIZON} years", p.horizon)));
    }
    Ok(())
}

async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError {
        status: 500,
        error: "worker failed".into(),
        details: vec![e.to_string()],
    })?
}

#[derive(Clone)]
struct AppState {
    catalog: Arc<PresetCatalog>,
}

pub fn presets(catalog: &PresetCatalog) -> Result<Vec<PresetEntry>, Error> {
    catalog
        .specs()
        .into_iter()
        .map(|s| {
            Ok(PresetEntry {
                display_name: display_name(catalog, &s),
                params: catalog.build(&s)?,
                name: s.name,
                pet_regime: s.pet_regime,
                det_package: s.det_package,
                opportunism: s.opportunism,
            })
        })
        .collect()
}

/// Library entry point behind `POST /api/evaluate`.
pub fn evaluate(req: &EvaluateRequest) -> Result<EvaluateResponse, ApiError> {
    guard_params(&req.params)?;
    if !(req.resolution >= 1.0) || !req.resolution.is_finite() {
        return Err(ApiError::bad_request(
            "invalid request",
            vec![format!("resolution must be >= 1, got {}", req.resolution)],
        ));
    }
    if req.resolution > MAX_RESOLUTION {
        return Err(ApiError::too_large(format!("resolution {} exceeds {MAX_RESOLUTION}", req.resolution)));
    }
    let tr = sample_trajectory(&req.params, req.resolution)?;
    let r = cumulative_risk(&req.params)?;
    Ok(EvaluateResponse {
        summary: Summary { r, p: breakout_prob(r)?, crossing: crossing_times(&req.params).first_persistent },
        series: Series {
            t: tr.t,
            p: tr.p,
            d: tr.d,
            rai: tr.rai,
            pr_detect: tr.pr_detect,
            hazard: tr.hazard,
            cumulative_r: tr.cumulative_risk,
        },
    })
}

/// Library entry point behind `POST /api/sweep`.
pub fn sweep(catalog: &PresetCatalog, req: &SweepRequest) -> Result<SweepSurface, ApiError> {
    let parameter: SweepParameter = req.parameter.parse()?;
    let mut grid = SweepGrid::robustness(parameter, catalog)?;
    if let Some(values) = &req.values {
        if values.len() > MAX_SWEEP_VALUES {
            return Err(ApiError::too_large(format!("{} sweep values exceed {MAX_SWEEP_VALUES}", values.len())));
        }
        grid.values = values.clone();
    }
    if let Some(regimes) = &req.regimes {
        grid.regimes = regimes.clone();
    }
    grid.base = match &req.base {
        Some(b) => b.clone(),
        None => robustness_base(catalog)?,
    };
    guard_params(&grid.base)?;
    Ok(oat_sweep(catalog, &grid)?)
}

/// Library entry point behind `POST /api/montecarlo`.
pub fn montecarlo(req: &MonteCarloRequest) -> Result<MCResult, ApiError> {
    if req.trials > MAX_TRIALS {
        return Err(ApiError::too_large(format!("{} trials exceed {MAX_TRIALS}", req.trials)));
    }
    if req.params.horizon > MAX_HORIZON {
        return Err(ApiError::too_large(format!("horizon {} exceeds {MAX_HORIZON} years", req.params.horizon)));
    }
    let mut config = MCConfig::new(req.params.clone(), req.trials, req.seed);
    if let Some(rate) = req.max_rate {
        config.max_rate = rate;
    }
    Ok(simulate(&config)?)
}

async fn get_presets(State(state): State<AppState>) -> ApiResult<Vec<PresetEntry>> {
    Ok(Json(presets(&state.catalog)?))
}

async fn post_evaluate(body: Bytes) -> ApiResult<EvaluateResponse> {
    let req: EvaluateRequest = parse(&body)?;
    blocking(move || evaluate(&req)).await.map(Json)
}

async fn post_sweep(State(state): State<AppState>, body: Bytes) -> ApiResult<SweepSurface> {
    let req: SweepRequest = parse(&body)?;
    blocking(move || sweep(&state.catalog, &req)).await.map(Json)
}

async fn post_montecarlo(body: Bytes) -> ApiResult<MCResult> {
    let req: MonteCarloRequest = parse(&body)?;
    blocking(move || montecarlo(&req)).await.map(Json)
}

pub fn router(catalog: PresetCatalog, config: ServiceConfig) -> Router {
    let app = Router::new()
        .route("/api/presets", get(get_presets))
        .route("/api/evaluate", post(post_evaluate))
        .route("/api/sweep", post(post_sweep))
        .route("/api/montecarlo", post(post_montecarlo))
        .with_state(AppState { catalog: Arc::new(catalog) });
    if config.cors {
        app.layer(CorsLayer::permissive())
    } else {
        app
    }
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr, catalog: PresetCatalog, config: ServiceConfig) -> std::io::Result<()> {
    serve_on(tokio::net::TcpListener::bind(addr).await?, catalog, config).await
}

/// Serves on an already bound listener, e.g. one bound to port 0.
pub async fn serve_on(
    listener: tokio::net::TcpListener,
    catalog: PresetCatalog,
    config: ServiceConfig,
) -> std::io::Result<()> {
    axum::serve(listener, router(catalog, config)).await
}
