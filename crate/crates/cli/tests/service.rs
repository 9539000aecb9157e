use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use cl2_cli::service::{router, AppState, Config};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = req.body(body.map_or_else(Body::empty, |b| Body::from(b.to_string()))).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn app(strict: bool) -> Router {
    router(AppState::new(Config { strict, ..Config::default() }))
}

async fn open(app: &Router, formula: &str) -> (String, Value) {
    let (status, body) =
        call(app, "POST", "/session", Some(json!({ "formula": formula, "human_player": "bot" }))).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    (body["session_id"].as_str().unwrap().to_string(), body)
}

#[tokio::test]
async fn health_reports_version() {
    let (status, body) = call(&app(false), "GET", "/health", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["status"], "ok");
    assert_eq!(body["version"], env!("CARGO_PKG_VERSION"));
}

#[tokio::test]
async fn decide_endpoint() {
    let app = app(false);
    let (_, body) = call(&app, "POST", "/decide", Some(json!({ "formula": "P \\/ ~P" }))).await;
    assert_eq!(body["provable"], true);
    let (_, body) = call(&app, "POST", "/decide", Some(json!({ "formula": "P -> P & P" }))).await;
    assert_eq!(body["provable"], false);
    let (_, body) = call(&app, "POST", "/decide", Some(json!({ "formula": "p | ~p", "system": "cl1" }))).await;
    assert_eq!(body["provable"], true);
    let (status, _) = call(&app, "POST", "/decide", Some(json!({ "formula": "p &" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn refute_endpoint() {
    let app = app(false);
    let (_, body) = call(&app, "POST", "/refute", Some(json!({ "formula": "P -> P & P" }))).await;
    assert_eq!(body["refutable"], true, "{body}");
    assert_eq!(body["certificate"]["cl1_unprovable"], true);
    let (_, body) = call(&app, "POST", "/refute", Some(json!({ "formula": "P & P -> P" }))).await;
    assert_eq!(body["refutable"], false);
}

#[tokio::test]
async fn mirrored_reply_and_win() {
    let app = app(false);
    let (id, created) = open(&app, "P & P -> P").await;
    assert_eq!(created["state"]["phase"], "inner_wait");
    let (_, body) = call(&app, "POST", &format!("/session/{id}/move"), Some(json!({ "move": "2.1" }))).await;
    assert_eq!(body["accepted"], true, "{body}");
    let replies = body["machine_replies"].as_array().unwrap();
    assert_eq!(replies.len(), 1);
    assert!(replies[0].as_str().unwrap().starts_with("1."), "{body}");
    let (_, body) = call(&app, "POST", &format!("/session/{id}/stop"), None).await;
    assert_eq!(body["winner"], json!("T"), "{body}");
    assert_eq!(body["violations"], json!([]));
    let (_, body) = call(&app, "GET", &format!("/session/{id}"), None).await;
    assert_eq!(body["state"]["phase"], "finished");
}

#[tokio::test]
async fn illegal_move_leaves_session_unchanged() {
    let app = app(false);
    let (id, created) = open(&app, "P & P -> P").await;
    let (_, body) = call(&app, "POST", &format!("/session/{id}/move"), Some(json!({ "move": "7.7" }))).await;
    assert_eq!(body["accepted"], false);
    assert!(body["reason"].as_str().unwrap().contains("not a legal move"));
    let (_, now) = call(&app, "GET", &format!("/session/{id}"), None).await;
    assert_eq!(now["state"], created["state"]);
}

#[tokio::test]
async fn strict_mode_forfeits() {
    let app = app(true);
    let (id, _) = open(&app, "P & P -> P").await;
    let (_, body) = call(&app, "POST", &format!("/session/{id}/move"), Some(json!({ "move": "7.7" }))).await;
    assert_eq!(body["accepted"], false);
    assert!(body["reason"].as_str().unwrap().starts_with("forfeit"));
    assert_eq!(body["state"]["phase"], "finished");
    assert_eq!(body["state"]["winner"], json!("T"));
    let (_, body) = call(&app, "POST", &format!("/session/{id}/move"), Some(json!({ "move": "2.1" }))).await;
    assert_eq!(body["accepted"], false);
}

#[tokio::test]
async fn choice_moves_get_machine_answers() {
    let app = app(false);
    let (id, created) = open(&app, "(p * q) -> (p * q)").await;
    let legal = created["state"]["legal_moves"].as_array().unwrap();
    assert!(legal.contains(&json!("2.2")), "{created}");
    let (_, body) = call(&app, "POST", &format!("/session/{id}/move"), Some(json!({ "move": "2.2" }))).await;
    assert_eq!(body["accepted"], true);
    assert_eq!(body["machine_replies"], json!(["1.2"]));
}

#[tokio::test]
async fn unprovable_session_is_refused_with_certificate() {
    let (status, body) =
        call(&app(false), "POST", "/session", Some(json!({ "formula": "P -> P & P", "human_player": "bot" }))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["refutation"]["refutable"], true, "{body}");
}

#[tokio::test]
async fn explicit_interpretation_and_missing_session() {
    let app = app(false);
    let interp = json!({ "elementary": { "p": "F" }, "general": { "P": "irregular1" } });
    let (status, body) =
        call(&app, "POST", "/session", Some(json!({ "formula": "P -> P", "interpretation": interp }))).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    let (status, _) = call(&app, "GET", "/session/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) =
        call(&app, "POST", "/session", Some(json!({ "formula": "P -> P", "human_player": "top" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn idle_sessions_expire() {
    let state = AppState::new(Config { strict: false, idle: Duration::ZERO });
    let app = router(state.clone());
    let (id, _) = open(&app, "P -> P").await;
    state.expire();
    let (status, _) = call(&app, "GET", &format!("/session/{id}"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}
