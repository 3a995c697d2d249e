use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "grascluster.manifest/1";

#[derive(Clone, Debug, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn of_bytes(path: &str, bytes: &[u8]) -> FileDigest {
        FileDigest {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }

    pub fn of_file(path: &Path) -> std::io::Result<FileDigest> {
        let bytes = std::fs::read(path)?;
        Ok(FileDigest::of_bytes(&path.display().to_string(), &bytes))
    }
}

/// One per run, written whether or not the run succeeded.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub schema: &'static str,
    pub command: String,
    pub params: serde_json::Value,
    pub rng_seed: u64,
    pub version: &'static str,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub exit_code: i32,
}

pub fn unix_now() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

impl RunManifest {
    pub fn start(command: &str, params: serde_json::Value, rng_seed: u64) -> RunManifest {
        RunManifest {
            schema: SCHEMA,
            command: command.to_string(),
            params,
            rng_seed,
            version: env!("CARGO_PKG_VERSION"),
            started_unix: unix_now(),
            finished_unix: 0.0,
            inputs: Vec::new(),
            outputs: Vec::new(),
            exit_code: 0,
        }
    }
}
