//! Shared state of one invocation: global flags, input loading with digests, errors.

use std::cell::RefCell;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use surfclust::surface::family::Model;
use surfclust::surface::{CurveWord, Triangulation};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Validation(_) => "validation",
            CliError::Io { .. } => "io",
        }
    }
}

pub fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub struct Session {
    pub surface: Option<PathBuf>,
    pub jobs: usize,
    pub seed: u64,
    inputs: RefCell<Vec<InputDigest>>,
}

impl Session {
    pub fn new(surface: Option<PathBuf>, jobs: usize, seed: u64) -> Session {
        Session { surface, jobs, seed, inputs: RefCell::new(Vec::new()) }
    }

    pub fn inputs(&self) -> Vec<InputDigest> {
        self.inputs.borrow().clone()
    }

    pub fn read(&self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
        self.inputs.borrow_mut().push(InputDigest { path: path.display().to_string(), sha256: sha256_hex(&bytes) });
        String::from_utf8(bytes).map_err(|_| CliError::Validation(format!("`{}` is not UTF-8", path.display())))
    }

    pub fn surface(&self) -> Result<Triangulation, CliError> {
        let path = self.surface.as_ref().ok_or_else(|| CliError::Usage("this command needs --surface".into()))?;
        Triangulation::from_json(&self.read(path)?).map_err(invalid)
    }

    pub fn optional_surface(&self) -> Result<Option<Triangulation>, CliError> {
        match self.surface {
            Some(_) => self.surface().map(Some),
            None => Ok(None),
        }
    }

    pub fn curve(&self, t: &Triangulation, path: &Path) -> Result<CurveWord, CliError> {
        t.parse_curve(&self.read(path)?).map_err(invalid)
    }
}

/// The family model a surface file was written from; the file must match it exactly.
pub fn family_model(t: &Triangulation) -> Result<Model, CliError> {
    let family = t.family().ok_or_else(|| {
        CliError::Validation("surface file has no `family`; this command needs a family surface".into())
    })?;
    let m = Model::new(family).map_err(invalid)?;
    if m.triangulation().fingerprint() != t.fingerprint() {
        return Err(CliError::Validation(format!("surface differs from the standard triangulation of {family:?}")));
    }
    Ok(m)
}

/// Reproducibility record written next to a run with `--manifest`.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub library_version: String,
    pub seed: u64,
    pub jobs: usize,
    pub output_sha256: String,
    pub exit_code: i32,
    pub summary: serde_json::Value,
    pub elapsed_ms: u128,
}
