//! Reproducible-run manifests: what ran, with which inputs, producing which
//! bytes.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub artifact_version: String,
    pub seed: u64,
    /// SHA-256 of the canonical configuration rendering.
    pub config_sha256: String,
    /// SHA-256 per output file, keyed by file name.
    pub outputs: BTreeMap<String, String>,
    pub duration_seconds: f64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &str, seed: u64, canonical_config: &str) -> Self {
        Self {
            command: command.to_string(),
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config_sha256: sha256_hex(canonical_config.as_bytes()),
            outputs: BTreeMap::new(),
            duration_seconds: 0.0,
        }
    }

    /// Record an output file's checksum.
    pub fn add_output(&mut self, path: &Path) -> std::io::Result<()> {
        let bytes = std::fs::read(path)?;
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        self.outputs.insert(name, sha256_hex(&bytes));
        Ok(())
    }

    /// Write the manifest itself; always the run's last artifact.
    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        let path = dir.join("manifest.json");
        let json = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, json)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checksums_identify_content() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_ne!(sha256_hex(b"a"), sha256_hex(b"b"));
    }

    #[test]
    fn manifest_round_trips_through_json() {
        let mut m = RunManifest::new("plan", 7, "seed=7\n");
        m.outputs.insert("plan.csv".into(), sha256_hex(b"rows"));
        m.duration_seconds = 1.5;
        let json = serde_json::to_string(&m).unwrap();
        let back: RunManifest = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }
}
