use std::convert::Infallible;

use axum::extract::rejection::JsonRejection;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::sse::{Event, KeepAlive, Sse};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use futures::stream::{self, Stream};
use serde::Serialize;
use serde_json::json;
use tokio::sync::broadcast::error::RecvError;

use crate::api::{CommandReply, SessionCommand, SessionSnapshot};
use crate::session::{Service, StreamMessage};
use crate::ServiceError;

impl ServiceError {
    fn status(&self) -> StatusCode {
        match self {
            ServiceError::NoSession => StatusCode::NOT_FOUND,
            ServiceError::Busy => StatusCode::CONFLICT,
            ServiceError::Invalid(_) => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let reply = CommandReply {
            accepted: false,
            command: None,
            reason: Some(self.to_string()),
        };
        (self.status(), Json(reply)).into_response()
    }
}

pub fn router(service: Service) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/session", get(session))
        .route("/api/session/command", post(command))
        .route("/api/session/events", get(events))
        .with_state(service)
}

async fn health(State(svc): State<Service>) -> Json<serde_json::Value> {
    Json(json!({
        "status": "ok",
        "session": svc.snapshot().is_some(),
        "running": svc.is_busy(),
    }))
}

#[derive(Serialize)]
struct SessionView<'a> {
    running: bool,
    #[serde(flatten)]
    snapshot: &'a SessionSnapshot,
}

async fn session(State(svc): State<Service>) -> Result<Response, ServiceError> {
    let snap = svc.snapshot().ok_or(ServiceError::NoSession)?;
    let view = SessionView {
        running: svc.is_busy(),
        snapshot: &snap,
    };
    Ok(Json(view).into_response())
}

async fn command(
    State(svc): State<Service>,
    body: Result<Json<SessionCommand>, JsonRejection>,
) -> Result<(StatusCode, Json<CommandReply>), ServiceError> {
    let Json(cmd) = body.map_err(|e| ServiceError::Invalid(e.body_text()))?;
    let name = cmd.name().to_string();
    svc.submit(cmd)?;
    Ok((
        StatusCode::ACCEPTED,
        Json(CommandReply {
            accepted: true,
            command: Some(name),
            reason: None,
        }),
    ))
}

async fn events(State(svc): State<Service>) -> Result<Sse<impl Stream<Item = Result<Event, Infallible>>>, ServiceError> {
    if svc.snapshot().is_none() {
        return Err(ServiceError::NoSession);
    }
    let rx = svc.subscribe();
    let stream = stream::unfold(Some(rx), |rx| async move {
        let mut rx = rx?;
        let event = match rx.recv().await {
            Ok(StreamMessage::Iteration(e)) => Event::default().event("iteration").json_data(e).expect("serializable"),
            Ok(StreamMessage::Reset) => return Some((Ok(Event::default().event("reset").data("{}")), None)),
            Err(RecvError::Lagged(k)) => Event::default().event("gap").data(json!({ "skipped": k }).to_string()),
            Err(RecvError::Closed) => return None,
        };
        Some((Ok(event), Some(rx)))
    });
    Ok(Sse::new(stream).keep_alive(KeepAlive::default()))
}
