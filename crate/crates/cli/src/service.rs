//! HTTP play protocol. Each session owns a [`Session`] behind its own lock;
//! sessions idle longer than the configured limit are dropped.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use cl2::calculus::{hybridize, Budget, CalcError, Decider, System};
use cl2::completeness::{refute_with, MMode, Refutation};
use cl2::games::{Interpretation, Player, Preset};
use cl2::strategy::{MoveOutcome, Phase, Session};
use cl2::syntax::{parse, Formula};
use serde::Deserialize;
use serde_json::{json, Value};
use uuid::Uuid;

/// Time allowed for proof search per request.
const SEARCH_LIMIT: Duration = Duration::from_secs(20);

#[derive(Debug, Clone)]
pub struct Config {
    /// Illegal moves forfeit instead of being rejected.
    pub strict: bool,
    pub idle: Duration,
}

impl Default for Config {
    fn default() -> Config {
        Config { strict: false, idle: Duration::from_secs(1800) }
    }
}

struct Entry {
    session: Session,
    touched: Instant,
}

struct Shared {
    config: Config,
    sessions: Mutex<HashMap<String, Arc<Mutex<Entry>>>>,
}

#[derive(Clone)]
pub struct AppState(Arc<Shared>);

impl AppState {
    pub fn new(config: Config) -> AppState {
        AppState(Arc::new(Shared { config, sessions: Mutex::new(HashMap::new()) }))
    }

    /// Drops idle sessions; returns how many were removed.
    pub fn expire(&self) -> usize {
        let idle = self.0.config.idle;
        let mut map = self.0.sessions.lock().unwrap();
        let before = map.len();
        map.retain(|_, e| e.lock().map(|e| e.touched.elapsed() < idle).unwrap_or(false));
        before - map.len()
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Entry>>, ApiError> {
        self.0.sessions.lock().unwrap().get(id).cloned().ok_or_else(|| err(StatusCode::NOT_FOUND, "no such session"))
    }
}

type ApiError = (StatusCode, Json<Value>);
type ApiResult = Result<Json<Value>, ApiError>;

fn err(status: StatusCode, message: impl ToString) -> ApiError {
    (status, Json(json!({ "error": message.to_string() })))
}

fn parse_formula(text: &str) -> Result<Formula, ApiError> {
    parse(text).map_err(|e| err(StatusCode::BAD_REQUEST, format!("parse error: {e}")))
}

fn calc_error(e: CalcError) -> ApiError {
    match e {
        CalcError::BudgetExceeded { .. } => err(StatusCode::UNPROCESSABLE_ENTITY, e),
        _ => err(StatusCode::BAD_REQUEST, e),
    }
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(|e| err(StatusCode::INTERNAL_SERVER_ERROR, e))
}

fn budget() -> Budget {
    Budget { time: Some(SEARCH_LIMIT), ..Budget::default() }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/decide", post(decide))
        .route("/refute", post(refute))
        .route("/session", post(create))
        .route("/session/{id}", get(show))
        .route("/session/{id}/move", post(make_move))
        .route("/session/{id}/stop", post(stop))
        .with_state(state)
}

pub async fn serve(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let state = AppState::new(config);
    let sweeper = state.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(Duration::from_secs(60));
        loop {
            tick.tick().await;
            sweeper.expire();
        }
    });
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}

async fn health() -> Json<Value> {
    Json(json!({ "status": "ok", "version": env!("CARGO_PKG_VERSION") }))
}

#[derive(Deserialize)]
struct DecideRequest {
    formula: String,
    system: Option<System>,
}

async fn decide(Json(req): Json<DecideRequest>) -> ApiResult {
    let f = parse_formula(&req.formula)?;
    let system = req.system.unwrap_or(System::Cl2);
    let g = f.clone();
    let provable = blocking(move || Decider::with_budget(system, budget()).decide(&g)).await?.map_err(calc_error)?;
    Ok(Json(json!({ "formula": f.to_string(), "system": system, "provable": provable })))
}

#[derive(Deserialize)]
struct RefuteRequest {
    formula: String,
    m: Option<String>,
}

fn refutation(f: Formula, mode: MMode) -> Result<Value, ApiError> {
    match refute_with(&f, mode, budget()) {
        Ok(Refutation::NotRefutable) => Ok(json!({ "formula": f.to_string(), "refutable": false })),
        Ok(Refutation::Certificate(c)) => Ok(json!({ "formula": f.to_string(), "refutable": c.holds(), "certificate": *c })),
        Err(e) => Err(err(StatusCode::UNPROCESSABLE_ENTITY, e)),
    }
}

async fn refute(Json(req): Json<RefuteRequest>) -> ApiResult {
    let f = parse_formula(&req.formula)?;
    let mode = match req.m.as_deref() {
        Some(m) => m.parse().map_err(|e: String| err(StatusCode::BAD_REQUEST, e))?,
        None => MMode::PerAtom,
    };
    Ok(Json(blocking(move || refutation(f, mode)).await??))
}

#[derive(Deserialize)]
struct CreateRequest {
    formula: String,
    /// A preset name for every general atom, or an interpretation object.
    interpretation: Option<Value>,
    human_player: Option<String>,
}

fn build_interpretation(f: &Formula, spec: Option<&Value>) -> Result<Interpretation, ApiError> {
    let bad = |m: String| err(StatusCode::BAD_REQUEST, m);
    let mut i = match spec {
        None | Some(Value::String(_)) => {
            let name = spec.and_then(Value::as_str).unwrap_or("molecule(m=2,leaves=TF)");
            let p = Preset::from_name(name).ok_or_else(|| bad(format!("unknown preset `{name}`")))?;
            let mut i = Interpretation::new();
            for g in f.general_names() {
                i.general.insert(g, p.game());
            }
            i
        }
        Some(v) => Interpretation::from_value(v).map_err(|e| bad(e.to_string()))?,
    };
    for e in f.elem_atoms() {
        i.elementary.entry(e).or_insert(Player::Top);
    }
    if !i.covers(f) {
        return Err(bad(format!("interpretation does not cover every atom of `{f}`")));
    }
    Ok(i)
}

async fn create(State(state): State<AppState>, Json(req): Json<CreateRequest>) -> ApiResult {
    if req.human_player.as_deref().is_some_and(|p| p != "bot") {
        return Err(err(StatusCode::BAD_REQUEST, "the human plays ⊥; human_player must be \"bot\""));
    }
    let f = parse_formula(&req.formula)?;
    let interp = Arc::new(build_interpretation(&f, req.interpretation.as_ref())?);
    let g = f.clone();
    let proof = blocking(move || Decider::with_budget(System::Cl2, budget()).prove(&g)).await?.map_err(calc_error)?;
    let Some(proof) = proof else {
        let g = f.clone();
        let refutation = blocking(move || refutation(g, MMode::PerAtom)).await?.ok();
        return Err((
            StatusCode::UNPROCESSABLE_ENTITY,
            Json(json!({ "error": format!("`{f}` is not provable in CL2"), "refutation": refutation })),
        ));
    };
    let proof = hybridize(&proof).map_err(|e| err(StatusCode::INTERNAL_SERVER_ERROR, e))?;
    let mut session =
        Session::new(Arc::new(proof), interp).map_err(|e| err(StatusCode::INTERNAL_SERVER_ERROR, e))?;
    let replies = session.machine_flush().map_err(|e| err(StatusCode::INTERNAL_SERVER_ERROR, e))?;
    let body = json!({ "session_id": Uuid::new_v4().to_string(), "machine_replies": replies, "state": session.state() });
    state.expire();
    let id = body["session_id"].as_str().unwrap().to_string();
    state.0.sessions.lock().unwrap().insert(id, Arc::new(Mutex::new(Entry { session, touched: Instant::now() })));
    Ok(Json(body))
}

async fn show(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult {
    let entry = state.get(&id)?;
    let mut e = entry.lock().unwrap();
    e.touched = Instant::now();
    Ok(Json(json!({ "session_id": id, "state": e.session.state() })))
}

#[derive(Deserialize)]
struct MoveRequest {
    #[serde(rename = "move")]
    mv: String,
}

async fn make_move(State(state): State<AppState>, Path(id): Path<String>, Json(req): Json<MoveRequest>) -> ApiResult {
    let entry = state.get(&id)?;
    let mut e = entry.lock().unwrap();
    e.touched = Instant::now();
    let reject = |reason: &str, s: &Session| json!({ "accepted": false, "reason": reason, "machine_replies": [], "state": s.state() });
    if e.session.phase() != Phase::InnerWait {
        return Ok(Json(reject("the session is finished", &e.session)));
    }
    if !state.0.config.strict && !e.session.adversary_moves().contains(&req.mv) {
        let reason = format!("`{}` is not a legal move here", req.mv);
        return Ok(Json(reject(&reason, &e.session)));
    }
    let s = &mut e.session;
    let outcome = s.adversary_move(&req.mv).map_err(|e| err(StatusCode::CONFLICT, e))?;
    let (accepted, reason, replies) = match outcome {
        MoveOutcome::General => (true, None, Vec::new()),
        MoveOutcome::Mirrored { reply } => (true, None, vec![reply]),
        MoveOutcome::Choice => (true, None, s.machine_flush().map_err(|e| err(StatusCode::INTERNAL_SERVER_ERROR, e))?),
        MoveOutcome::Forfeit { reason } => (false, Some(format!("forfeit: {reason}")), Vec::new()),
    };
    let mut body = json!({ "accepted": accepted, "machine_replies": replies, "state": s.state() });
    if let Some(r) = reason {
        body["reason"] = r.into();
    }
    Ok(Json(body))
}

async fn stop(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult {
    let entry = state.get(&id)?;
    let mut e = entry.lock().unwrap();
    e.touched = Instant::now();
    let winner = e.session.adversary_stop().map_err(|e| err(StatusCode::CONFLICT, e))?;
    Ok(Json(json!({ "winner": winner, "violations": e.session.violations(), "state": e.session.state() })))
}
