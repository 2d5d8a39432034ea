use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::routing::{get, post, put};
use axum::{Json, Router};
use cpccms_core::cpc::DEFAULT_KAPPA;
use cpccms_core::decision::{DecisionMatrix, RankingReport};
use cpccms_core::metrics::TimingSet;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::services::ServeDir;

use crate::error::ServiceError;
use crate::session::{Session, Snapshot, WhatIf};
use crate::store::SessionStore;

pub type ApiResult<T> = Result<T, ServiceError>;

#[derive(Debug, Deserialize)]
struct CreateSession {
    criteria: Vec<String>,
    #[serde(default = "default_kappa")]
    kappa: f64,
}

fn default_kappa() -> f64 {
    DEFAULT_KAPPA
}

#[derive(Debug, Deserialize)]
struct JudgmentBody {
    value: f64,
}

#[derive(Debug, Default, Deserialize)]
struct RankingQuery {
    #[serde(default)]
    efficiency: Option<String>,
}

/// Session state plus the live accordance and weights.
#[derive(Debug, Serialize)]
struct SessionView {
    #[serde(flatten)]
    session: Session,
    criteria: Vec<String>,
    kappa: f64,
    entries: Vec<Vec<f64>>,
    ai: f64,
    verdict: cpccms_core::Verdict,
    weights: indexmap::IndexMap<String, f64>,
}

/// Builds the API router. When `static_dir` is given, unmatched paths are
/// served from it.
pub fn router(store: Arc<SessionStore>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/judgments/{i}/{j}", put(set_judgment))
        .route("/sessions/{id}/scores", put(set_scores))
        .route("/sessions/{id}/timings", put(set_timings))
        .route("/sessions/{id}/weights", get(get_weights))
        .route("/sessions/{id}/ranking", get(get_ranking))
        .route("/sessions/{id}/whatif", post(whatif))
        .with_state(store);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.fallback(|| async { ServiceError::NotFound("route".into()) }),
    }
}

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ServiceError::BadRequest {
        message: format!("invalid request body: {e}"),
        details: json!({ "line": e.line(), "column": e.column() }),
    })
}

fn parse_index(raw: &str, name: &str) -> ApiResult<usize> {
    raw.parse().map_err(|_| ServiceError::BadRequest {
        message: format!("`{name}` must be a non-negative integer, got `{raw}`"),
        details: json!({ "parameter": name }),
    })
}

fn parse_flag(raw: Option<&str>) -> ApiResult<bool> {
    match raw {
        None | Some("false") | Some("0") => Ok(false),
        Some("true") | Some("1") => Ok(true),
        Some(other) => Err(ServiceError::bad_request(format!(
            "`efficiency` must be true or false, got `{other}`"
        ))),
    }
}

async fn create_session(
    State(store): State<Arc<SessionStore>>,
    body: Bytes,
) -> ApiResult<(StatusCode, Json<Value>)> {
    let req: CreateSession = parse_body(&body)?;
    let id = uuid::Uuid::new_v4().to_string();
    let session = Session::new(id.clone(), req.criteria, req.kappa)?;
    store.insert(session)?;
    Ok((StatusCode::CREATED, Json(json!({ "id": id }))))
}

async fn get_session(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> ApiResult<Json<SessionView>> {
    let session = store.read(&id, Session::clone)?;
    let snap = session.snapshot()?;
    Ok(Json(SessionView {
        criteria: session.criteria().to_vec(),
        kappa: session.kappa(),
        entries: session.pom().entries().to_vec(),
        ai: snap.ai,
        verdict: snap.verdict,
        weights: snap.weights,
        session,
    }))
}

async fn set_judgment(
    State(store): State<Arc<SessionStore>>,
    Path((id, i, j)): Path<(String, String, String)>,
    body: Bytes,
) -> ApiResult<Json<Snapshot>> {
    let (i, j) = (parse_index(&i, "i")?, parse_index(&j, "j")?);
    let req: JudgmentBody = parse_body(&body)?;
    let snap = store.mutate(&id, |s| s.set_judgment(i, j, req.value))?;
    Ok(Json(snap))
}

async fn set_scores(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<Value>> {
    let scores: DecisionMatrix = parse_body(&body)?;
    let revision = store.mutate(&id, |s| {
        s.set_scores(scores);
        Ok(s.revision)
    })?;
    Ok(Json(json!({ "revision": revision })))
}

async fn set_timings(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<Value>> {
    let timings: TimingSet = parse_body(&body)?;
    let revision = store.mutate(&id, |s| {
        s.set_timings(timings);
        Ok(s.revision)
    })?;
    Ok(Json(json!({ "revision": revision })))
}

async fn get_weights(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> ApiResult<Json<Value>> {
    let (report, revision) = store.read(&id, |s| (s.report(), s.revision))?;
    let report = report?;
    Ok(Json(json!({
        "criteria": report.weights.criteria(),
        "utilities": report.utilities,
        "weights": report.weights.iter().map(|(c, w)| (c.to_string(), w)).collect::<indexmap::IndexMap<_, _>>(),
        "ranks": report.ranks,
        "ai": report.accordance_index,
        "verdict": report.verdict,
        "warnings": report.warnings,
        "revision": revision,
    })))
}

async fn get_ranking(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    Query(q): Query<RankingQuery>,
) -> ApiResult<Json<RankingReport>> {
    let efficiency = parse_flag(q.efficiency.as_deref())?;
    Ok(Json(store.read(&id, |s| s.ranking(efficiency))??))
}

async fn whatif(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<RankingReport>> {
    let edits: WhatIf = if body.is_empty() {
        WhatIf::default()
    } else {
        parse_body(&body)?
    };
    Ok(Json(store.read(&id, |s| s.whatif(&edits))??))
}
