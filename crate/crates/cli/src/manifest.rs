//! Run manifests: one JSON line per successful invocation, appended to
//! `manifests.jsonl` in the cache directory.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use spexlab::CanonicalLabel;

use crate::SCHEMA_VERSION;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub subcommand: String,
    /// Arguments after the program name, as given.
    pub parameters: Vec<String>,
    pub inputs: Vec<CanonicalLabel>,
    pub tool_version: String,
    pub elapsed_ms: f64,
    /// SHA-256 of the bytes written to stdout.
    pub output_sha256: String,
}

impl RunManifest {
    pub fn new(
        subcommand: &str,
        parameters: Vec<String>,
        inputs: Vec<CanonicalLabel>,
        elapsed: Duration,
        output: &str,
    ) -> Self {
        RunManifest {
            schema_version: SCHEMA_VERSION,
            subcommand: subcommand.to_string(),
            parameters,
            inputs,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
            output_sha256: digest(output),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("manifests serialize")
    }
}

pub fn digest(output: &str) -> String {
    hex::encode(Sha256::digest(output.as_bytes()))
}
