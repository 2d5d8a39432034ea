//! HTTP API for eliciting criterion weights one judgment at a time and
//! ranking models against them.
//!
//! | Method | Path | Body |
//! |---|---|---|
//! | POST | `/sessions` | `{"criteria": [...], "kappa": 8}` |
//! | GET | `/sessions/{id}` | |
//! | PUT | `/sessions/{id}/judgments/{i}/{j}` | `{"value": -2}` (0-based indices) |
//! | PUT | `/sessions/{id}/scores` | `{"models": [...], "criteria": [...], "scores": [[...]]}` |
//! | PUT | `/sessions/{id}/timings` | `{"model": seconds, ...}` |
//! | GET | `/sessions/{id}/weights` | |
//! | GET | `/sessions/{id}/ranking?efficiency=true` | |
//! | POST | `/sessions/{id}/whatif` | `{"judgment_overrides": [...], "score_overrides": [...], "efficiency": false}` |
//!
//! Errors are `{"code", "message", "details"}` with status 400, 404 or 409.

pub mod api;
pub mod error;
pub mod session;
pub mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

pub use api::router;
pub use error::ServiceError;
pub use session::{JudgmentOverride, ScoreOverride, Session, Snapshot, WhatIf};
pub use store::SessionStore;

#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub addr: SocketAddr,
    pub state_dir: Option<PathBuf>,
    pub static_dir: Option<PathBuf>,
}

/// Binds and serves until the process is stopped.
pub async fn serve(config: ServeConfig) -> std::io::Result<()> {
    let store = match &config.state_dir {
        Some(dir) => SessionStore::open(dir)?,
        None => SessionStore::in_memory(),
    };
    let app = router(Arc::new(store), config.static_dir);
    let listener = tokio::net::TcpListener::bind(config.addr).await?;
    axum::serve(listener, app).await
}
