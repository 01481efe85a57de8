//! JSON play service.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;

use crate::play::{analyze, legal_moves, parse_position, PlayError, Player, Session, SumMove};

pub struct Store {
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
    next: AtomicU64,
    ttl: Duration,
}

impl Store {
    pub fn new(ttl: Duration) -> Store {
        Store { sessions: Mutex::new(HashMap::new()), next: AtomicU64::new(1), ttl }
    }

    /// Drops sessions idle for longer than the ttl.
    pub fn sweep(&self) -> usize {
        let now = Instant::now();
        let mut map = self.sessions.lock().unwrap();
        let before = map.len();
        map.retain(|_, s| now.duration_since(s.lock().unwrap().last_seen) <= self.ttl);
        before - map.len()
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, id: &str) -> Option<Arc<Mutex<Session>>> {
        self.sessions.lock().unwrap().get(id).cloned()
    }

    fn insert(&self, s: Session) {
        self.sessions.lock().unwrap().insert(s.id.clone(), Arc::new(Mutex::new(s)));
    }

    fn fresh_id(&self) -> String {
        format!("s{}", self.next.fetch_add(1, Ordering::Relaxed))
    }
}

pub struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

impl From<PlayError> for ApiError {
    fn from(e: PlayError) -> ApiError {
        let code = match e {
            PlayError::Parse(_) | PlayError::Domain(_) | PlayError::Illegal(_) => StatusCode::BAD_REQUEST,
            PlayError::WrongTurn | PlayError::Terminal => StatusCode::CONFLICT,
        };
        ApiError(code, e.to_string())
    }
}

type Shared = Arc<Store>;

#[derive(Deserialize)]
pub struct NewSession {
    pub position: String,
    pub human: Player,
    #[serde(default)]
    pub first: Option<Player>,
}

#[derive(Deserialize)]
pub struct AnalysisQuery {
    pub pos: String,
}

async fn create(State(store): State<Shared>, Json(req): Json<NewSession>) -> Result<Response, ApiError> {
    let position = parse_position(&req.position)?;
    let first = req.first.unwrap_or(Player::Lear);
    let s = Session::new(store.fresh_id(), position, req.human, first)?;
    let view = s.view()?;
    store.insert(s);
    Ok((StatusCode::CREATED, Json(view)).into_response())
}

async fn show(State(store): State<Shared>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let s = store.get(&id).ok_or_else(|| not_found(&id))?;
    let mut s = s.lock().unwrap();
    s.last_seen = Instant::now();
    Ok(Json(s.view()?).into_response())
}

async fn play_move(
    State(store): State<Shared>,
    Path(id): Path<String>,
    Json(m): Json<SumMove>,
) -> Result<Response, ApiError> {
    let s = store.get(&id).ok_or_else(|| not_found(&id))?;
    let mut s = s.lock().unwrap();
    s.human_move(m)?;
    Ok(Json(s.view()?).into_response())
}

async fn analysis(Query(q): Query<AnalysisQuery>) -> Result<Response, ApiError> {
    let position = parse_position(&q.pos)?;
    let a = analyze(&position)?;
    let mut v = serde_json::to_value(a).unwrap();
    v["moves"] = serde_json::to_value(legal_moves(&position)).unwrap();
    Ok(Json(v).into_response())
}

fn not_found(id: &str) -> ApiError {
    ApiError(StatusCode::NOT_FOUND, format!("no session {id}"))
}

pub fn router(store: Shared) -> Router {
    Router::new()
        .route("/session", post(create))
        .route("/session/{id}", get(show))
        .route("/session/{id}/move", post(play_move))
        .route("/analysis", get(analysis))
        .with_state(store)
}

/// Serves until the process ends, sweeping idle sessions once a minute.
pub async fn serve(port: u16, ttl: Duration) -> std::io::Result<()> {
    let store = Arc::new(Store::new(ttl));
    let sweeper = store.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(Duration::from_secs(60).min(ttl.max(Duration::from_secs(1))));
        loop {
            tick.tick().await;
            sweeper.sweep();
        }
    });
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(store)).await
}
