//! The run manifest: a JSON sidecar recording the resolved configuration,
//! tool version, input content digests, per-stage timings, and diagnostic
//! counts, so a run can be audited and reproduced.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    pub config: RunConfig,
    /// SHA-256 of each input, keyed by a stable input name.
    pub input_digests: BTreeMap<String, String>,
    /// Wall-clock milliseconds per pipeline stage.
    pub timings_ms: BTreeMap<String, u64>,
    /// Flat diagnostic counters (files skipped, rows matched, ...).
    pub diagnostics_counts: BTreeMap<String, u64>,
    /// Projects present in the training split; consumed by `crossval`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub training_projects: Option<Vec<String>>,
}

impl RunManifest {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        RunManifest {
            tool: "smellsift",
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config: config.clone(),
            input_digests: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
            diagnostics_counts: BTreeMap::new(),
            training_projects: None,
        }
    }

    pub fn add_file_digest(&mut self, name: &str, path: &Path) -> Result<()> {
        let bytes = fs::read(path)
            .with_context(|| format!("cannot read {} for digesting", path.display()))?;
        self.input_digests.insert(name.to_string(), hex_sha256(&bytes));
        Ok(())
    }

    pub fn add_digest(&mut self, name: &str, digest: String) {
        self.input_digests.insert(name.to_string(), digest);
    }

    pub fn count(&mut self, name: &str, value: usize) {
        self.diagnostics_counts.insert(name.to_string(), value as u64);
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        let mut bytes = serde_json::to_vec_pretty(self).context("manifest serialization")?;
        bytes.push(b'\n');
        Ok(bytes)
    }
}

pub fn hex_sha256(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(digest.len() * 2);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

/// Builds one digest over a set of (name, bytes) pairs in the given
/// order, so a whole corpus can be summarized as a single hash.
pub struct CorpusDigest {
    hasher: Sha256,
}

impl CorpusDigest {
    pub fn new() -> Self {
        CorpusDigest { hasher: Sha256::new() }
    }

    pub fn add(&mut self, name: &str, bytes: &[u8]) {
        self.hasher.update(name.as_bytes());
        self.hasher.update([0u8]);
        self.hasher.update(bytes);
        self.hasher.update([0u8]);
    }

    pub fn finish(self) -> String {
        let digest = self.hasher.finalize();
        let mut out = String::with_capacity(digest.len() * 2);
        for byte in digest {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }
}

/// Records elapsed wall-clock time per stage as the pipeline advances.
pub struct Stopwatch {
    last: Instant,
}

impl Stopwatch {
    pub fn start() -> Self {
        Stopwatch { last: Instant::now() }
    }

    /// Ends the current stage, charging its elapsed time to `stage`.
    pub fn lap(&mut self, manifest: &mut RunManifest, stage: &str) {
        let now = Instant::now();
        let elapsed = now.duration_since(self.last).as_millis() as u64;
        manifest.timings_ms.insert(stage.to_string(), elapsed);
        self.last = now;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_matches_known_vector() {
        // SHA-256 of the empty string.
        assert_eq!(
            hex_sha256(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_eq!(
            hex_sha256(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn corpus_digest_depends_on_names_and_order() {
        let mut a = CorpusDigest::new();
        a.add("x.java", b"class A {}");
        a.add("y.java", b"class B {}");
        let mut b = CorpusDigest::new();
        b.add("y.java", b"class B {}");
        b.add("x.java", b"class A {}");
        assert_ne!(a.finish(), b.finish());

        let mut c = CorpusDigest::new();
        c.add("x.java", b"class A {}");
        let mut d = CorpusDigest::new();
        d.add("x.java", b"class A {}");
        assert_eq!(c.finish(), d.finish());
    }
}
