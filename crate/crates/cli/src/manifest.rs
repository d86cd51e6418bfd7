use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// One record per run, written as JSON.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub parameters: serde_json::Value,
    pub outcome: String,
    pub exit_code: i32,
    pub witness: Option<String>,
    pub wall_time_ms: u128,
}

/// Collects input digests while a command runs.
#[derive(Debug, Default)]
pub struct Inputs {
    digests: BTreeMap<String, String>,
}

impl Inputs {
    /// Reads a file (or stdin for `-`) and records its SHA-256.
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let text = if path.as_os_str() == "-" {
            std::io::read_to_string(std::io::stdin()).context("reading stdin")?
        } else {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        };
        let digest = hex::encode(Sha256::digest(text.as_bytes()));
        self.digests.insert(path.display().to_string(), format!("sha256:{digest}"));
        Ok(text)
    }

    pub fn into_map(self) -> BTreeMap<String, String> {
        self.digests
    }
}

pub struct Clock(Instant);

impl Clock {
    pub fn start() -> Self {
        Self(Instant::now())
    }

    pub fn millis(&self) -> u128 {
        self.0.elapsed().as_millis()
    }
}
