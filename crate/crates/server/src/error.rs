use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use clusterkit::morphism::MorphismError;
use clusterkit::pairs::PairsError;
use clusterkit::SeedError;
use serde_json::json;

/// An error response `{"error": code, "detail": text}`.
#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub detail: String,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, detail: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            detail: detail.into(),
        }
    }

    pub fn bad_request(code: &'static str, detail: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, code, detail)
    }

    pub fn unknown_session(id: &str) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, "unknown_session", format!("no session {id}"))
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({"error": self.code, "detail": self.detail});
        (self.status, Json(body)).into_response()
    }
}

impl From<SeedError> for ApiError {
    fn from(e: SeedError) -> Self {
        let detail = e.to_string();
        match e {
            SeedError::NotExchangeable(_) => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "not_exchangeable", detail)
            }
            SeedError::NotAdmissible { .. } => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "not_admissible", detail)
            }
            SeedError::NotSkewSymmetrizable(_) => ApiError::bad_request("not_skew_symmetrizable", detail),
            SeedError::NotContained(_) => ApiError::bad_request("not_contained", detail),
            SeedError::NotFrozen(_) | SeedError::NameClash(_) | SeedError::InvalidPairing(_) => {
                ApiError::bad_request("invalid_pairing", detail)
            }
            SeedError::Malformed(_) | SeedError::Laurent(_) => ApiError::bad_request("malformed_seed", detail),
        }
    }
}

impl From<MorphismError> for ApiError {
    fn from(e: MorphismError) -> Self {
        match e {
            MorphismError::Seed(e) => e.into(),
            MorphismError::NotAMorphism(_)
            | MorphismError::NotInjective(_)
            | MorphismError::NotComponentEmbedding(_)
            | MorphismError::NotIdeal => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "negative_verdict", e.to_string())
            }
            _ => ApiError::bad_request("malformed_morphism", e.to_string()),
        }
    }
}

impl From<PairsError> for ApiError {
    fn from(e: PairsError) -> Self {
        match e {
            PairsError::Seed(e) => e.into(),
            PairsError::SubsetBudgetExceeded { .. } => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "subset_budget_exceeded", e.to_string())
            }
        }
    }
}
