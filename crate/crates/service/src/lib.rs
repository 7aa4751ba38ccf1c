//! JSON-over-HTTP session API for play and analysis.
//!
//! Sessions live in memory; every request to a session holds its lock for
//! the duration, and engine replies are computed on the blocking pool.

pub mod session;

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use catherd::classifier::{classify, Classification};
use catherd::generators::Family;
use catherd::infinite::{builtin_generators, Metadata};
use catherd::pruning::{prune_conservative, PruneReport};
use catherd::solver::{MoveAnalysis, Solver, SolverConfig};
use catherd::structure::{evadibility_report, EvadibilityReport};
use catherd::{load_graph, Graph};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

pub use session::{replay, EngineLevel, Game, GameError, GameState, LogEntry, Role, Turn};

#[derive(Debug, Error)]
pub enum ApiError {
    #[error("no session `{0}`")]
    NotFound(String),
    #[error("{0}")]
    Conflict(String),
    #[error("{0}")]
    Unprocessable(String),
    #[error("{0}")]
    Internal(String),
}

impl From<GameError> for ApiError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Rule(msg) => ApiError::Conflict(msg),
            GameError::Engine(msg) => ApiError::Internal(msg),
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::Unprocessable(e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match self {
            ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::Conflict(_) => StatusCode::CONFLICT,
            ApiError::Unprocessable(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ApiError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(json!({ "error": self.to_string() }))).into_response()
    }
}

type Shared = Arc<Mutex<Game>>;

/// Session store shared by all handlers.
#[derive(Clone)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, Shared>>>,
    cfg: SolverConfig,
}

impl Default for AppState {
    fn default() -> Self {
        AppState::new(SolverConfig::default())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SavedSession {
    pub id: String,
    pub graph: String,
    pub human_role: Role,
    pub engine_level: EngineLevel,
    pub log: Vec<LogEntry>,
}

impl AppState {
    pub fn new(cfg: SolverConfig) -> Self {
        AppState { sessions: Arc::new(RwLock::new(HashMap::new())), cfg }
    }

    fn get(&self, id: &str) -> Result<Shared, ApiError> {
        self.sessions.read().expect("store lock").get(id).cloned().ok_or_else(|| ApiError::NotFound(id.to_string()))
    }

    fn insert(&self, game: Game) -> String {
        let id = format!("{:032x}", rand::random::<u128>());
        self.sessions.write().expect("store lock").insert(id.clone(), Arc::new(Mutex::new(game)));
        id
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn snapshot(&self) -> Vec<SavedSession> {
        let map = self.sessions.read().expect("store lock");
        let mut out: Vec<SavedSession> = map
            .iter()
            .map(|(id, game)| {
                let game = game.lock().expect("session lock");
                let state = game.state();
                SavedSession {
                    id: id.clone(),
                    graph: game.graph().to_edge_list(),
                    human_role: state.human_role,
                    engine_level: state.engine_level,
                    log: state.log,
                }
            })
            .collect();
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }

    /// Rebuilds sessions from their logs. Random engines restart from
    /// their seeds.
    pub fn restore(&self, saved: &[SavedSession]) -> Result<(), ApiError> {
        for s in saved {
            let graph = load_graph(&s.graph).map_err(|e| ApiError::Unprocessable(e.to_string()))?;
            let game = Game::from_log(graph, s.human_role, s.engine_level, &s.log, &self.cfg)?;
            self.sessions.write().expect("store lock").insert(s.id.clone(), Arc::new(Mutex::new(game)));
        }
        Ok(())
    }

    pub fn save_snapshot(&self, path: &Path) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(&self.snapshot()).map_err(std::io::Error::other)?;
        std::fs::write(path, text)
    }

    pub fn load_snapshot(&self, path: &Path) -> Result<(), ApiError> {
        let text = std::fs::read_to_string(path).map_err(|e| ApiError::Internal(e.to_string()))?;
        let saved: Vec<SavedSession> = serde_json::from_str(&text).map_err(|e| ApiError::Unprocessable(e.to_string()))?;
        self.restore(&saved)
    }
}

#[derive(Debug, Deserialize)]
pub struct CreateRequest {
    pub graph: String,
    pub human_role: Role,
    #[serde(default = "default_level")]
    pub engine_level: EngineLevel,
}

fn default_level() -> EngineLevel {
    EngineLevel::Optimal
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SessionResponse {
    pub session_id: String,
    pub state: GameState,
}

#[derive(Debug, Deserialize)]
pub struct PlaceRequest {
    pub vertex: usize,
}

#[derive(Debug, Deserialize)]
pub struct CutRequest {
    pub edge: (usize, usize),
}

#[derive(Debug, Deserialize)]
pub struct AnalyzeRequest {
    pub graph: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AnalyzeResponse {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub values: Option<Vec<u32>>,
    pub cat_number: Option<u32>,
    pub classification: Option<Classification>,
    pub prune: Option<PruneReport>,
    pub evadibility: Option<EvadibilityReport>,
    /// Why a section is missing.
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FiniteGenerator {
    pub family: String,
    pub example: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InfiniteGenerator {
    pub spec: String,
    pub metadata: Metadata,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GeneratorList {
    pub finite: Vec<FiniteGenerator>,
    pub infinite: Vec<InfiniteGenerator>,
}

fn parse_graph_field(text: &str) -> Result<Graph, ApiError> {
    load_graph(text).map_err(|e| ApiError::Unprocessable(format!("malformed graph: {e}")))
}

async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
{
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError::Internal(e.to_string()))?
}

async fn with_session<T, F>(state: &AppState, id: &str, f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce(&mut Game) -> Result<T, ApiError> + Send + 'static,
{
    let shared = state.get(id)?;
    blocking(move || {
        let mut game = shared.lock().map_err(|_| ApiError::Internal("session poisoned".into()))?;
        f(&mut game)
    })
    .await
}

async fn create(State(state): State<AppState>, body: Result<Json<CreateRequest>, JsonRejection>) -> Result<Json<SessionResponse>, ApiError> {
    let Json(req) = body?;
    let graph = parse_graph_field(&req.graph)?;
    if graph.n() == 0 {
        return Err(ApiError::Unprocessable("graph has no vertices".into()));
    }
    let cfg = state.cfg.clone();
    let game = blocking(move || Ok(Game::new(graph, req.human_role, req.engine_level, &cfg)?)).await?;
    let snapshot = game.state();
    let session_id = state.insert(game);
    Ok(Json(SessionResponse { session_id, state: snapshot }))
}

async fn show(State(state): State<AppState>, UrlPath(id): UrlPath<String>) -> Result<Json<GameState>, ApiError> {
    with_session(&state, &id, |g| Ok(g.state())).await.map(Json)
}

async fn place(
    State(state): State<AppState>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<PlaceRequest>, JsonRejection>,
) -> Result<Json<GameState>, ApiError> {
    let Json(req) = body?;
    with_session(&state, &id, move |g| {
        g.place(req.vertex)?;
        Ok(g.state())
    })
    .await
    .map(Json)
}

async fn cut(
    State(state): State<AppState>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<CutRequest>, JsonRejection>,
) -> Result<Json<GameState>, ApiError> {
    let Json(req) = body?;
    with_session(&state, &id, move |g| {
        g.cut(req.edge.0, req.edge.1)?;
        Ok(g.state())
    })
    .await
    .map(Json)
}

async fn move_cat(
    State(state): State<AppState>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<PlaceRequest>, JsonRejection>,
) -> Result<Json<GameState>, ApiError> {
    let Json(req) = body?;
    with_session(&state, &id, move |g| {
        g.move_to(req.vertex)?;
        Ok(g.state())
    })
    .await
    .map(Json)
}

async fn analysis(State(state): State<AppState>, UrlPath(id): UrlPath<String>) -> Result<Json<MoveAnalysis>, ApiError> {
    let cfg = state.cfg.clone();
    with_session(&state, &id, move |g| {
        let cat = match (g.turn(), g.cat()) {
            (Turn::Over, _) => return Err(ApiError::Conflict("the game is over".into())),
            (_, None) => return Err(ApiError::Conflict("the cat has not been placed".into())),
            (_, Some(c)) => c,
        };
        let mut solver = Solver::new(g.graph(), cfg).map_err(|e| ApiError::Unprocessable(e.to_string()))?;
        solver.analyze(g.mask(), cat).map_err(|e| ApiError::Conflict(e.to_string()))
    })
    .await
    .map(Json)
}

/// Solver values, classification, prune report and evadibility for a graph.
pub fn analyze_graph(g: &Graph, cfg: &SolverConfig) -> AnalyzeResponse {
    let mut notes = Vec::new();
    let values = match Solver::new(g, cfg.clone()) {
        Ok(mut s) => Some(s.vertex_values()),
        Err(e) => {
            notes.push(format!("values: {e}"));
            None
        }
    };
    let classification = classify(g).map_err(|e| notes.push(format!("classification: {e}"))).ok();
    let prune = prune_conservative(g).map_err(|e| notes.push(format!("prune: {e}"))).ok();
    let evadibility = evadibility_report(g, false).map_err(|e| notes.push(format!("evadibility: {e}"))).ok();
    AnalyzeResponse {
        vertices: g.n(),
        edges: g.edges().to_vec(),
        cat_number: values.as_ref().map(|v| v.iter().copied().max().unwrap_or(0)),
        values,
        classification,
        prune,
        evadibility,
        notes,
    }
}

async fn analyze(State(state): State<AppState>, body: Result<Json<AnalyzeRequest>, JsonRejection>) -> Result<Json<AnalyzeResponse>, ApiError> {
    let Json(req) = body?;
    let graph = parse_graph_field(&req.graph)?;
    let cfg = state.cfg.clone();
    blocking(move || Ok(analyze_graph(&graph, &cfg))).await.map(Json)
}

pub fn generator_list() -> GeneratorList {
    GeneratorList {
        finite: Family::ALL.iter().map(|f| FiniteGenerator { family: f.name().into(), example: f.example().into() }).collect(),
        infinite: builtin_generators()
            .into_iter()
            .map(|f| InfiniteGenerator { spec: f.to_string(), metadata: f.metadata() })
            .collect(),
    }
}

async fn generators() -> Json<GeneratorList> {
    Json(generator_list())
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/session", post(create))
        .route("/api/session/{id}", get(show))
        .route("/api/session/{id}/place", post(place))
        .route("/api/session/{id}/cut", post(cut))
        .route("/api/session/{id}/move", post(move_cat))
        .route("/api/session/{id}/analysis", get(analysis))
        .route("/api/analyze", post(analyze))
        .route("/api/generators", get(generators))
        .with_state(state)
}

#[derive(Debug, Clone, Default)]
pub struct ServeOptions {
    pub addr: Option<SocketAddr>,
    pub static_dir: Option<PathBuf>,
    /// Sessions are loaded from here at start and written back on shutdown.
    pub snapshot: Option<PathBuf>,
    pub cfg: SolverConfig,
}

/// Runs the service until ctrl-c.
pub async fn serve(opts: ServeOptions) -> std::io::Result<()> {
    let state = AppState::new(opts.cfg.clone());
    if let Some(path) = opts.snapshot.as_deref().filter(|p| p.exists()) {
        state.load_snapshot(path).map_err(std::io::Error::other)?;
    }
    let mut app = router(state.clone());
    if let Some(dir) = &opts.static_dir {
        app = app.fallback_service(tower_http::services::ServeDir::new(dir));
    }
    let addr = opts.addr.unwrap_or_else(|| SocketAddr::from(([127, 0, 0, 1], 8080)));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    if let Some(path) = &opts.snapshot {
        state.save_snapshot(path)?;
    }
    Ok(())
}
