use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error("session `{0}` not found")]
    NotFound(String),

    #[error("{message}")]
    BadRequest { message: String, details: Value },

    #[error("{message}")]
    Conflict {
        code: &'static str,
        message: String,
        details: Value,
    },

    #[error("could not persist session: {0}")]
    Storage(#[from] std::io::Error),
}

impl ServiceError {
    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::BadRequest {
            message: message.into(),
            details: Value::Null,
        }
    }

    pub fn conflict(code: &'static str, message: impl Into<String>) -> Self {
        Self::Conflict {
            code,
            message: message.into(),
            details: Value::Null,
        }
    }

    pub fn status(&self) -> StatusCode {
        match self {
            Self::NotFound(_) => StatusCode::NOT_FOUND,
            Self::BadRequest { .. } => StatusCode::BAD_REQUEST,
            Self::Conflict { .. } => StatusCode::CONFLICT,
            Self::Storage(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            Self::NotFound(_) => "not_found",
            Self::BadRequest { .. } => "invalid_request",
            Self::Conflict { code, .. } => code,
            Self::Storage(_) => "storage_error",
        }
    }

    fn details(&self) -> Value {
        match self {
            Self::BadRequest { details, .. } | Self::Conflict { details, .. } => details.clone(),
            _ => Value::Null,
        }
    }
}

impl From<cpccms_core::Error> for ServiceError {
    fn from(err: cpccms_core::Error) -> Self {
        use cpccms_core::Error as E;
        let message = err.to_string();
        match err {
            E::Invalid(violations) => Self::BadRequest {
                message,
                details: json!({ "violations": violations }),
            },
            E::CriteriaMismatch {
                missing,
                unexpected,
            } => Self::Conflict {
                code: "criteria_mismatch",
                message,
                details: json!({ "missing": missing, "unexpected": unexpected }),
            },
            _ => Self::bad_request(message),
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let body = json!({
            "code": self.code(),
            "message": self.to_string(),
            "details": self.details(),
        });
        (self.status(), Json(body)).into_response()
    }
}
