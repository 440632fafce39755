//! JSON certificates written by every command: a payload that is
//! byte-identical across reruns of the same invocation, wrapped with input
//! hashes, a payload hash, the tool version, and timing (excluded from the
//! hash).

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
pub struct Certificate {
    pub kind: String,
    pub tool_version: String,
    /// Content hashes of the inputs that fed this run.
    pub inputs: BTreeMap<String, String>,
    /// The deterministic result payload.
    pub payload: Value,
    /// SHA-256 of the serialized payload; the determinism contract covers
    /// exactly this.
    pub payload_sha256: String,
    /// Wall time of the run in milliseconds. Not covered by the hash.
    pub wall_time_ms: u128,
}

pub struct CertificateBuilder {
    kind: String,
    inputs: BTreeMap<String, String>,
    started: Instant,
}

impl CertificateBuilder {
    pub fn new(kind: impl Into<String>) -> Self {
        CertificateBuilder {
            kind: kind.into(),
            inputs: BTreeMap::new(),
            started: Instant::now(),
        }
    }

    pub fn input_bytes(&mut self, name: impl Into<String>, bytes: &[u8]) {
        self.inputs.insert(name.into(), sha256_hex(bytes));
    }

    pub fn input_param(&mut self, name: impl Into<String>, value: impl ToString) {
        self.inputs
            .insert(name.into(), sha256_hex(value.to_string().as_bytes()));
    }

    pub fn finish(self, payload: Value) -> Certificate {
        let payload_bytes = serde_json::to_vec(&payload).expect("payload serializes");
        Certificate {
            kind: self.kind,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            inputs: self.inputs,
            payload_sha256: sha256_hex(&payload_bytes),
            payload,
            wall_time_ms: self.started.elapsed().as_millis(),
        }
    }
}

/// Write a certificate under the output directory and echo the path.
pub fn write_certificate(
    out_dir: &Path,
    file_name: &str,
    cert: &Certificate,
) -> anyhow::Result<PathBuf> {
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(file_name);
    let text = serde_json::to_string_pretty(cert)?;
    std::fs::write(&path, text)?;
    Ok(path)
}
