//! HTTP/JSON front end to the `clusterkit` library.
//!
//! Sessions hold a root seed and a mutation history and live in memory,
//! evicted least recently used first. The stateless endpoints mirror the
//! command line tool.

mod error;
mod session;

use std::collections::BTreeSet;
use std::net::SocketAddr;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use clusterkit::morphism::MorphismSpec;
use clusterkit::pairs::{classify_cotorsion_pairs, enumerate_complete_pairs, CoreEntry, CotorsionClassification};
use clusterkit::seed::SeedJson;
use clusterkit::{EnumerationLimits, Seed, Var};
use lru::LruCache;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use tower_http::cors::CorsLayer;

pub use error::ApiError;
pub use session::{digest, HistoryEntry, Session, SessionView, VariableValue};

pub const DEFAULT_CAPACITY: usize = 256;
pub const DEFAULT_GRAPH_BUDGET: usize = 100;
pub const DEFAULT_GRAPH_RADIUS: usize = 2;

type SessionHandle = Arc<tokio::sync::Mutex<Session>>;

#[derive(Clone)]
pub struct AppState {
    sessions: Arc<Mutex<LruCache<String, SessionHandle>>>,
}

impl AppState {
    pub fn new(capacity: usize) -> Self {
        let capacity = NonZeroUsize::new(capacity).unwrap_or(NonZeroUsize::MIN);
        AppState {
            sessions: Arc::new(Mutex::new(LruCache::new(capacity))),
        }
    }

    fn insert(&self, session: Session) -> String {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let handle = Arc::new(tokio::sync::Mutex::new(session));
        self.sessions.lock().expect("session table").put(id.clone(), handle);
        id
    }

    fn get(&self, id: &str) -> Result<SessionHandle, ApiError> {
        self.sessions
            .lock()
            .expect("session table")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::unknown_session(id))
    }
}

pub fn router() -> Router {
    router_with_capacity(DEFAULT_CAPACITY)
}

pub fn router_with_capacity(capacity: usize) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/mutate", post(mutate_session))
        .route("/sessions/{id}/undo", post(undo_session))
        .route("/sessions/{id}/graph", get(session_graph))
        .route("/check-morphism", post(check_morphism))
        .route("/decompose", post(decompose))
        .route("/complete-pairs", post(complete_pairs))
        .fallback(not_found)
        .layer(CorsLayer::permissive())
        .with_state(AppState::new(capacity))
}

/// Serves on `addr` until the process is stopped.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router()).await
}

fn parse_body<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request("malformed_json", e.to_string()))
}

fn parse_seed(body: &[u8]) -> Result<Seed, ApiError> {
    let json: SeedJson = parse_body(body)?;
    let seed = Seed::try_from(json)?;
    seed.validate()?;
    Ok(seed)
}

/// Runs CPU-bound work off the async workers.
async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

async fn not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint")
}

async fn create_session(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let session = Session::new(parse_seed(&body)?)?;
    let view_session = session.clone();
    let id = state.insert(session);
    Ok((StatusCode::CREATED, Json(view_session.view(&id))).into_response())
}

async fn get_session(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    let handle = state.get(&id)?;
    let session = handle.lock().await;
    Ok(Json(session.view(&id)))
}

/// The variable to mutate: a JSON string, `{"var": name}`, or bare text.
#[derive(Deserialize)]
#[serde(untagged)]
enum MutateBody {
    Name(Var),
    Object { var: Var },
}

fn parse_mutate_body(body: &[u8]) -> Result<Var, ApiError> {
    if let Ok(parsed) = serde_json::from_slice::<MutateBody>(body) {
        return Ok(match parsed {
            MutateBody::Name(v) | MutateBody::Object { var: v } => v,
        });
    }
    let text = std::str::from_utf8(body).map_err(|e| ApiError::bad_request("malformed_body", e.to_string()))?;
    Var::new(text.trim()).map_err(|e| ApiError::bad_request("malformed_body", e.to_string()))
}

async fn mutate_session(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<SessionView>, ApiError> {
    let var = parse_mutate_body(&body)?;
    let handle = state.get(&id)?;
    let mut session = handle.lock_owned().await;
    let view = blocking(move || {
        session.mutate(&var)?;
        Ok(session.view(&id))
    })
    .await?;
    Ok(Json(view))
}

async fn undo_session(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    let handle = state.get(&id)?;
    let mut session = handle.lock().await;
    session.undo()?;
    Ok(Json(session.view(&id)))
}

#[derive(Deserialize)]
struct GraphQuery {
    budget: Option<usize>,
    radius: Option<usize>,
}

async fn session_graph(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(query): Query<GraphQuery>,
) -> Result<Response, ApiError> {
    let handle = state.get(&id)?;
    let current = handle.lock().await.current().clone();
    let limits = EnumerationLimits::new(
        query.budget.unwrap_or(DEFAULT_GRAPH_BUDGET),
        query.radius.unwrap_or(DEFAULT_GRAPH_RADIUS),
    );
    let graph = blocking(move || Ok(current.enumerate_class(limits)?.graph())).await?;
    Ok(Json(graph).into_response())
}

#[derive(Deserialize)]
struct DepthQuery {
    depth: Option<usize>,
}

async fn check_morphism(Query(query): Query<DepthQuery>, body: Bytes) -> Result<Response, ApiError> {
    let text = std::str::from_utf8(&body).map_err(|e| ApiError::bad_request("malformed_body", e.to_string()))?;
    let spec = MorphismSpec::from_json_str(text)?;
    let depth = query.depth.unwrap_or_else(|| spec.default_depth());
    let verdict = blocking(move || Ok(spec.check(depth)?)).await?;
    Ok(Json(verdict).into_response())
}

async fn decompose(body: Bytes) -> Result<Response, ApiError> {
    let seed = parse_seed(&body)?;
    Ok(Json(seed.decompose()).into_response())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CompletePairsBody {
    seed: SeedJson,
    #[serde(default)]
    freeze: Vec<Var>,
    #[serde(default)]
    all: bool,
    #[serde(default)]
    force: bool,
}

async fn complete_pairs(body: Bytes) -> Result<Response, ApiError> {
    let request: CompletePairsBody = parse_body(&body)?;
    let seed = Seed::try_from(request.seed)?;
    seed.validate()?;
    let report = blocking(move || {
        if request.all {
            return Ok(classify_cotorsion_pairs(&seed, request.force)?);
        }
        let ex0: BTreeSet<Var> = request.freeze.into_iter().collect();
        let pairs = enumerate_complete_pairs(&seed, &ex0)?;
        Ok(CotorsionClassification {
            assumes_functorially_finite: true,
            cores: vec![CoreEntry {
                freezing_set: seed.ex().iter().filter(|v| ex0.contains(*v)).cloned().collect(),
                pairs,
            }],
        })
    })
    .await?;
    Ok(Json(report).into_response())
}
