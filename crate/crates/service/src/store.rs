//! In-memory session registry with optional JSON snapshots on disk.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use crate::error::ServiceError;
use crate::session::Session;

pub type SharedSession = Arc<RwLock<Session>>;

#[derive(Debug, Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, SharedSession>>,
    state_dir: Option<PathBuf>,
}

impl SessionStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads every `*.json` snapshot in `dir`, creating the directory if needed.
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        let mut sessions = HashMap::new();
        for entry in fs::read_dir(&dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                let session: Session = serde_json::from_slice(&fs::read(&path)?).map_err(|e| {
                    std::io::Error::new(
                        std::io::ErrorKind::InvalidData,
                        format!("{}: {e}", path.display()),
                    )
                })?;
                sessions.insert(session.id.clone(), Arc::new(RwLock::new(session)));
            }
        }
        Ok(Self {
            sessions: RwLock::new(sessions),
            state_dir: Some(dir),
        })
    }

    pub fn state_dir(&self) -> Option<&Path> {
        self.state_dir.as_deref()
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn insert(&self, session: Session) -> Result<SharedSession, ServiceError> {
        self.persist(&session)?;
        let id = session.id.clone();
        let shared = Arc::new(RwLock::new(session));
        self.sessions.write().unwrap().insert(id, shared.clone());
        Ok(shared)
    }

    pub fn get(&self, id: &str) -> Result<SharedSession, ServiceError> {
        self.sessions
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::NotFound(id.to_string()))
    }

    /// Runs `f` under the session's write lock. The session is saved only if
    /// `f` succeeds; on failure the in-memory state is rolled back so a
    /// rejected or unsaved mutation never becomes visible.
    pub fn mutate<T>(
        &self,
        id: &str,
        f: impl FnOnce(&mut Session) -> Result<T, ServiceError>,
    ) -> Result<T, ServiceError> {
        let shared = self.get(id)?;
        let mut guard = shared.write().unwrap();
        let before = guard.clone();
        let out = f(&mut guard).and_then(|out| {
            self.persist(&guard)?;
            Ok(out)
        });
        if out.is_err() {
            *guard = before;
        }
        out
    }

    pub fn read<T>(&self, id: &str, f: impl FnOnce(&Session) -> T) -> Result<T, ServiceError> {
        let shared = self.get(id)?;
        let guard = shared.read().unwrap();
        Ok(f(&guard))
    }

    fn persist(&self, session: &Session) -> Result<(), ServiceError> {
        let Some(dir) = &self.state_dir else {
            return Ok(());
        };
        let json = serde_json::to_vec_pretty(session)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
        let path = dir.join(format!("{}.json", session.id));
        let tmp = dir.join(format!(".{}.json.tmp", session.id));
        fs::write(&tmp, json)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}
