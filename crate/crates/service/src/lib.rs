//! HTTP control plane for one live sparsification session.
//!
//! Routes: `GET /api/health`, `GET /api/session`,
//! `POST /api/session/command`, `GET /api/session/events` (SSE).

pub mod api;
mod routes;
pub mod session;

use thiserror::Error;

pub use api::{CommandReply, IterationEvent, SessionCommand, SessionSnapshot};
pub use routes::router;
pub use session::{Service, StreamMessage};

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("no session")]
    NoSession,
    #[error("a command is already running")]
    Busy,
    #[error("{0}")]
    Invalid(String),
    #[error("port {port} is already in use")]
    PortInUse { port: u16 },
    #[error("cannot bind port {port}: {source}")]
    Bind { port: u16, source: std::io::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Binds 127.0.0.1:`port` (0 picks a free port).
pub async fn bind(port: u16) -> Result<tokio::net::TcpListener, ServiceError> {
    tokio::net::TcpListener::bind(("127.0.0.1", port)).await.map_err(|source| {
        if source.kind() == std::io::ErrorKind::AddrInUse {
            ServiceError::PortInUse { port }
        } else {
            ServiceError::Bind { port, source }
        }
    })
}

/// Serves until the process ends.
pub async fn serve(listener: tokio::net::TcpListener, service: Service) -> Result<(), ServiceError> {
    axum::serve(listener, router(service)).await?;
    Ok(())
}
