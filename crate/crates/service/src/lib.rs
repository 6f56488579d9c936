//! Read-only HTTP/JSON API over one pivot graph and an optional corpus
//! snapshot. All routes live under `/api/v1`.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, RwLock};

use axum::extract::{Query, State};
use axum::http::{Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;
use tower_http::cors::{Any, CorsLayer};

use modugraph::analysis::{walks, WalkOptions};
use modugraph::corpus::{class_of, load_corpus, ClassCount, CorpusAnalysis, DegreeReport, ModulationRecord};
use modugraph::export::{graph_json, GraphJson};
use modugraph::{Error, KeyLabel, PivotGraph, Triad};

/// Longest walk the server will enumerate.
pub const MAX_WALK_STEPS: usize = 4;

/// An analysed corpus. Replaced as a whole, never mutated.
#[derive(Debug)]
pub struct Snapshot {
    pub records: Vec<ModulationRecord>,
    pub analysis: CorpusAnalysis,
}

impl Snapshot {
    pub fn new(records: Vec<ModulationRecord>) -> Self {
        let analysis = CorpusAnalysis::new(&records);
        Snapshot { records, analysis }
    }
}

#[derive(Debug)]
pub struct ServiceState {
    graph: PivotGraph,
    corpus: RwLock<Option<Arc<Snapshot>>>,
}

impl ServiceState {
    pub fn new(graph: PivotGraph, corpus: Option<Snapshot>) -> Arc<Self> {
        Arc::new(ServiceState {
            graph,
            corpus: RwLock::new(corpus.map(Arc::new)),
        })
    }

    pub fn graph(&self) -> &PivotGraph {
        &self.graph
    }

    pub fn snapshot(&self) -> Option<Arc<Snapshot>> {
        self.corpus.read().unwrap_or_else(|e| e.into_inner()).clone()
    }

    fn publish(&self, snapshot: Snapshot) -> Arc<Snapshot> {
        let snapshot = Arc::new(snapshot);
        *self.corpus.write().unwrap_or_else(|e| e.into_inner()) = Some(snapshot.clone());
        snapshot
    }
}

/// JSON error body `{error, detail, line?}`.
#[derive(Debug, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    status: StatusCode,
    error: &'static str,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<u64>,
}

impl ApiError {
    fn new(status: StatusCode, error: &'static str, detail: impl Into<String>) -> Self {
        ApiError {
            status,
            error,
            detail: detail.into(),
            line: None,
        }
    }

    fn bad_request(detail: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", detail)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

pub fn router(state: Arc<ServiceState>) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers(Any);
    Router::new()
        .route("/api/v1/graph", get(get_graph))
        .route("/api/v1/neighbors", get(get_neighbors))
        .route("/api/v1/walks", get(get_walks))
        .route("/api/v1/corpus", post(post_corpus))
        .route("/api/v1/corpus/stats", get(get_corpus_stats))
        .fallback(|| async { ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint") })
        .layer(cors)
        .with_state(state)
}

/// Bind and serve until the process is stopped.
pub async fn serve(state: Arc<ServiceState>, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(state)).await
}

async fn get_graph(State(state): State<Arc<ServiceState>>) -> Json<GraphJson> {
    Json(graph_json(&state.graph))
}

type Params = Query<HashMap<String, String>>;

fn param<'a>(params: &'a HashMap<String, String>, name: &str) -> Result<&'a str, ApiError> {
    params
        .get(name)
        .map(String::as_str)
        .ok_or_else(|| ApiError::bad_request(format!("missing query parameter {name:?}")))
}

fn key_param(state: &ServiceState, params: &HashMap<String, String>, name: &str) -> Result<usize, ApiError> {
    let key: KeyLabel = param(params, name)?
        .parse()
        .map_err(|e: Error| ApiError::bad_request(format!("{name}: {e}")))?;
    state
        .graph
        .vertex(key)
        .map_err(|e| ApiError::new(StatusCode::NOT_FOUND, "unknown_vertex", e.to_string()))
}

#[derive(Debug, Serialize)]
struct Neighbor {
    key: KeyLabel,
    pivots: Vec<Triad>,
    #[serde(skip_serializing_if = "Option::is_none")]
    corpus_frequency: Option<usize>,
}

async fn get_neighbors(State(state): State<Arc<ServiceState>>, Query(params): Params) -> ApiResult<Vec<Neighbor>> {
    let v = key_param(&state, &params, "key")?;
    let snapshot = state.snapshot();
    let g = &state.graph;
    let from = g.label(v);
    let out = g
        .neighbors(v)
        .map(|u| {
            let key = g.label(u);
            let corpus_frequency = snapshot.as_ref().map(|s| {
                class_of(from, key).map_or(0, |class| s.analysis.class_count(class))
            });
            Neighbor {
                key,
                pivots: g.pivots_between(v, u).iter().copied().collect(),
                corpus_frequency,
            }
        })
        .collect();
    Ok(Json(out))
}

#[derive(Debug, Serialize)]
struct WalkStep {
    from: KeyLabel,
    to: KeyLabel,
    pivots: Vec<Triad>,
}

#[derive(Debug, Serialize)]
struct WalkJson {
    keys: Vec<KeyLabel>,
    steps: Vec<WalkStep>,
}

fn flag(params: &HashMap<String, String>, name: &str) -> Result<bool, ApiError> {
    match params.get(name).map(String::as_str) {
        None | Some("false") | Some("0") => Ok(false),
        Some("") | Some("true") | Some("1") => Ok(true),
        Some(other) => Err(ApiError::bad_request(format!("{name}: expected true or false, got {other:?}"))),
    }
}

async fn get_walks(State(state): State<Arc<ServiceState>>, Query(params): Params) -> ApiResult<Vec<WalkJson>> {
    let raw = param(&params, "steps")?;
    let steps: usize = raw
        .parse()
        .map_err(|_| ApiError::bad_request(format!("steps: not a number: {raw:?}")))?;
    if !(1..=MAX_WALK_STEPS).contains(&steps) {
        return Err(ApiError::bad_request(format!("steps must be between 1 and {MAX_WALK_STEPS}")));
    }
    let no_backtrack = flag(&params, "no_backtrack")?;
    let from = key_param(&state, &params, "from")?;
    let to = key_param(&state, &params, "to")?;
    let g = &state.graph;
    let found = walks(g, from, to, steps, WalkOptions { no_backtrack, with_pivots: false })
        .map_err(|e| ApiError::bad_request(e.to_string()))?;
    let out = found
        .into_iter()
        .map(|w| WalkJson {
            keys: w.vertices.iter().map(|&v| g.label(v)).collect(),
            steps: w
                .vertices
                .windows(2)
                .map(|pair| WalkStep {
                    from: g.label(pair[0]),
                    to: g.label(pair[1]),
                    pivots: g.pivots_between(pair[0], pair[1]).iter().copied().collect(),
                })
                .collect(),
        })
        .collect();
    Ok(Json(out))
}

#[derive(Debug, Serialize)]
struct CorpusSummary {
    songs: usize,
    records: usize,
    distinct_classes: usize,
    unique_song_graphs: usize,
    warnings: usize,
}

async fn post_corpus(State(state): State<Arc<ServiceState>>, body: String) -> ApiResult<CorpusSummary> {
    let records = load_corpus(body.as_bytes()).map_err(|e| ApiError {
        status: StatusCode::UNPROCESSABLE_ENTITY,
        error: "invalid_corpus",
        line: e.line(),
        detail: e.to_string(),
    })?;
    let s = state.publish(Snapshot::new(records));
    let a = &s.analysis;
    Ok(Json(CorpusSummary {
        songs: a.songs,
        records: a.records,
        distinct_classes: a.distinct_classes,
        unique_song_graphs: a.song_graphs.unique,
        warnings: a.warnings.len(),
    }))
}

#[derive(Debug, Serialize)]
struct CorpusStats<'a> {
    songs: usize,
    distinct_classes: usize,
    histogram: &'a [ClassCount],
    degrees: &'a DegreeReport,
    unique_song_graphs: usize,
}

async fn get_corpus_stats(State(state): State<Arc<ServiceState>>) -> Result<Response, ApiError> {
    let s = state
        .snapshot()
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "no_corpus", "no corpus has been loaded"))?;
    let a = &s.analysis;
    Ok(Json(CorpusStats {
        songs: a.songs,
        distinct_classes: a.distinct_classes,
        histogram: &a.histogram,
        degrees: &a.degrees,
        unique_song_graphs: a.song_graphs.unique,
    })
    .into_response())
}
