use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use clusterkit_server::{router, router_with_capacity};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

const A2_COEFFS: &str = r#"{"exchangeable": ["x1","x2"], "frozen": ["x3","x4"], "matrix": [[0,1],[-1,0],[0,-1],[0,0]]}"#;

async fn call(app: &Router, method: Method, uri: &str, body: &str) -> (StatusCode, Value) {
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn create(app: &Router, seed: &str) -> String {
    let (status, body) = call(app, Method::POST, "/sessions", seed).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    body["id"].as_str().unwrap().to_string()
}

fn value_of<'a>(view: &'a Value, var: &str) -> &'a str {
    view["values"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["var"] == var)
        .unwrap()["value"]
        .as_str()
        .unwrap()
}

#[tokio::test]
async fn mutate_shows_new_variable() {
    let app = router();
    let id = create(&app, A2_COEFFS).await;
    let (status, view) = call(&app, Method::POST, &format!("/sessions/{id}/mutate"), r#""x1""#).await;
    assert_eq!(status, StatusCode::OK, "{view}");
    assert_eq!(value_of(&view, "x1"), "(1+x2)/x1");
    assert_eq!(view["history"][0]["var"], "x1");
    assert_eq!(view["seed"]["matrix"], json!([[0, -1], [1, 0], [0, -1], [0, 0]]));
}

#[tokio::test]
async fn mutate_twice_returns_to_the_fresh_state() {
    let app = router();
    let id = create(&app, A2_COEFFS).await;
    let (_, fresh) = call(&app, Method::GET, &format!("/sessions/{id}"), "").await;
    for body in [r#""x1""#, r#"{"var": "x1"}"#] {
        let (status, _) = call(&app, Method::POST, &format!("/sessions/{id}/mutate"), body).await;
        assert_eq!(status, StatusCode::OK);
    }
    let (_, after) = call(&app, Method::GET, &format!("/sessions/{id}"), "").await;
    assert_eq!(after["seed"], fresh["seed"]);
    assert_eq!(after["values"], fresh["values"]);
    assert_eq!(after["quiver"], fresh["quiver"]);
    assert_eq!(after["digest"], fresh["digest"]);
    assert_eq!(after["history"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn mutating_a_frozen_variable_is_rejected() {
    let app = router();
    let id = create(&app, A2_COEFFS).await;
    let (status, body) = call(&app, Method::POST, &format!("/sessions/{id}/mutate"), r#""x3""#).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["error"], "not_exchangeable");
    assert!(body["detail"].as_str().unwrap().contains("x3"));
}

#[tokio::test]
async fn unknown_session_is_404() {
    let app = router();
    let (status, body) = call(&app, Method::GET, "/sessions/nope", "").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["error"], "unknown_session");
    let (status, _) = call(&app, Method::POST, "/sessions/nope/undo", "").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn malformed_seed_is_400() {
    let app = router();
    let (status, body) = call(&app, Method::POST, "/sessions", "{not json").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"], "malformed_json");
    let bad = r#"{"exchangeable": ["x1","x2"], "matrix": [[0,1],[1,0]]}"#;
    let (status, body) = call(&app, Method::POST, "/sessions", bad).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"], "not_skew_symmetrizable");
}

#[tokio::test]
async fn undo_pops_history() {
    let app = router();
    let id = create(&app, A2_COEFFS).await;
    let (_, fresh) = call(&app, Method::GET, &format!("/sessions/{id}"), "").await;
    call(&app, Method::POST, &format!("/sessions/{id}/mutate"), r#""x2""#).await;
    let (status, view) = call(&app, Method::POST, &format!("/sessions/{id}/undo"), "").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(view["seed"], fresh["seed"]);
    assert!(view["history"].as_array().unwrap().is_empty());
    let (status, body) = call(&app, Method::POST, &format!("/sessions/{id}/undo"), "").await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["error"], "empty_history");
}

#[tokio::test]
async fn graph_around_current_seed() {
    let app = router();
    let id = create(&app, A2_COEFFS).await;
    let (status, graph) = call(&app, Method::GET, &format!("/sessions/{id}/graph"), "").await;
    assert_eq!(status, StatusCode::OK);
    // Radius 2 in the pentagon reaches all five seeds.
    assert_eq!(graph["nodes"].as_array().unwrap().len(), 5);
    assert_eq!(graph["depth_reached"], 2);
    let root = graph["root"].as_u64().unwrap() as usize;
    assert_eq!(graph["nodes"][root]["depth"], 0);
    let (_, small) = call(&app, Method::GET, &format!("/sessions/{id}/graph?budget=2"), "").await;
    assert_eq!(small["nodes"].as_array().unwrap().len(), 2);
    assert_eq!(small["complete"], false);
}

#[tokio::test]
async fn sessions_are_evicted_least_recently_used() {
    let app = router_with_capacity(2);
    let first = create(&app, A2_COEFFS).await;
    let second = create(&app, A2_COEFFS).await;
    call(&app, Method::GET, &format!("/sessions/{first}"), "").await;
    create(&app, A2_COEFFS).await;
    let (status, _) = call(&app, Method::GET, &format!("/sessions/{second}"), "").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, Method::GET, &format!("/sessions/{first}"), "").await;
    assert_eq!(status, StatusCode::OK);
}

#[tokio::test]
async fn check_morphism_endpoint() {
    let app = router();
    let spec = json!({
        "source": {"exchangeable": ["x1","x2"], "frozen": ["x3","x4"], "matrix": [[0,1],[-1,0],[0,-1],[0,0]]},
        "target": {"exchangeable": ["x1","x2"], "frozen": ["x3","x4"], "matrix": [[0,1],[-1,0],[0,-1],[0,0]]},
        "images": {"x1": "0", "x2": "-1", "x3": "0", "x4": "x1"},
        "generator_table": {"(1+x2)/x1": "x2", "(x1+x3)/x2": "0", "(x1+x3+x2*x3)/(x1*x2)": "-1"}
    })
    .to_string();
    let (status, verdict) = call(&app, Method::POST, "/check-morphism?depth=3", &spec).await;
    assert_eq!(status, StatusCode::OK, "{verdict}");
    assert_eq!(verdict["cm1"]["status"], "pass");
    assert_eq!(verdict["cm2"]["status"], "pass");
    assert_eq!(verdict["checked_depth"], 3);
    let (again_status, again) = call(&app, Method::POST, "/check-morphism?depth=3", &spec).await;
    assert_eq!(again_status, status);
    assert_eq!(again, verdict);

    let (status, body) = call(&app, Method::POST, "/check-morphism", r#"{"source": "a.json"}"#).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"], "malformed_morphism");
}

#[tokio::test]
async fn decompose_endpoint() {
    let app = router();
    let seed = json!({
        "exchangeable": ["x1","x2","x5","x6","x7"],
        "frozen": ["x3","x4"],
        "matrix": [[0,1,0,0,0],[-2,0,0,0,0],[0,0,0,0,0],[0,0,0,0,-1],[0,0,0,1,0],[3,-2,-1,1,0],[1,0,1,0,0]]
    })
    .to_string();
    let (status, body) = call(&app, Method::POST, "/decompose", &seed).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["components"].as_array().unwrap().len(), 3);
    assert_eq!(body["identification"]["x3"].as_array().unwrap().len(), 3);
    assert_eq!(body["identification"]["x4"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn complete_pairs_endpoint() {
    let app = router();
    let body = format!(r#"{{"seed": {A2_COEFFS}}}"#);
    let (status, report) = call(&app, Method::POST, "/complete-pairs", &body).await;
    assert_eq!(status, StatusCode::OK, "{report}");
    assert_eq!(report["assumes_functorially_finite"], true);
    assert_eq!(report["cores"][0]["pairs"].as_array().unwrap().len(), 2);

    let body = format!(r#"{{"seed": {A2_COEFFS}, "all": true}}"#);
    let (_, report) = call(&app, Method::POST, "/complete-pairs", &body).await;
    let total: usize = report["cores"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["pairs"].as_array().unwrap().len())
        .sum();
    // Freezing nothing: 2, one variable: 2 each, both: 1.
    assert_eq!(total, 2 + 2 + 2 + 1);

    let body = format!(r#"{{"seed": {A2_COEFFS}, "freeze": ["x3"]}}"#);
    let (status, err) = call(&app, Method::POST, "/complete-pairs", &body).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(err["error"], "not_exchangeable");
}

#[tokio::test]
async fn unknown_route_uses_error_shape() {
    let app = router();
    let (status, body) = call(&app, Method::GET, "/nowhere", "").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["error"], "not_found");
}

#[tokio::test]
async fn cors_headers_present() {
    let app = router();
    let request = Request::builder()
        .method(Method::GET)
        .uri("/sessions/none")
        .header("origin", "http://localhost:5173")
        .body(Body::empty())
        .unwrap();
    let response = app.oneshot(request).await.unwrap();
    assert!(response.headers().contains_key("access-control-allow-origin"));
}
