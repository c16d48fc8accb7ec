//! Run manifests: enough recorded state to re-run any command.

use anyhow::Result;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Hash over every effective setting; changes iff a setting changes.
    pub config_fingerprint: String,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub started_at: String,
    pub finished_at: String,
}

pub struct ManifestBuilder {
    command: String,
    fingerprint: String,
    inputs: Vec<PathBuf>,
    outputs: Vec<PathBuf>,
    seed: Option<u64>,
    started_at: chrono::DateTime<chrono::Utc>,
}

impl ManifestBuilder {
    /// `settings` must serialize every effective option of the command.
    pub fn new<S: Serialize>(command: &str, settings: &S) -> Result<Self> {
        let json = serde_json::to_string(settings)?;
        let digest = Sha256::digest(json.as_bytes());
        let fingerprint: String = digest.iter().take(16).map(|b| format!("{b:02x}")).collect();
        Ok(ManifestBuilder {
            command: command.to_string(),
            fingerprint,
            inputs: Vec::new(),
            outputs: Vec::new(),
            seed: None,
            started_at: chrono::Utc::now(),
        })
    }

    pub fn input(mut self, path: &Path) -> Self {
        self.inputs.push(path.to_path_buf());
        self
    }

    pub fn output(mut self, path: &Path) -> Self {
        self.outputs.push(path.to_path_buf());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Writes `<primary output>.manifest.json` next to the first output.
    pub fn write(self) -> Result<PathBuf> {
        let primary = self
            .outputs
            .first()
            .cloned()
            .unwrap_or_else(|| PathBuf::from("run"));
        let manifest_path = PathBuf::from(format!("{}.manifest.json", primary.display()));
        let manifest = RunManifest {
            command: self.command,
            config_fingerprint: self.fingerprint,
            inputs: self.inputs,
            outputs: self.outputs,
            seed: self.seed,
            started_at: self.started_at.to_rfc3339(),
            finished_at: chrono::Utc::now().to_rfc3339(),
        };
        crate::jsonl::write_json_pretty(&manifest_path, &manifest)?;
        Ok(manifest_path)
    }
}
