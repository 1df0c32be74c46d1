use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use charsum::FieldManifest;

pub const SEED_NOTE: &str = "none: all runs are deterministic";

/// Provenance attached to every JSON payload. Only `timestamp_unix` varies
/// between identical invocations.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command_line: Vec<String>,
    pub field: Option<FieldManifest>,
    pub timestamp_unix: u64,
    pub seed: &'static str,
}

impl RunManifest {
    pub fn new(command_line: &[String], field: Option<FieldManifest>) -> Self {
        let timestamp_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command_line: command_line.to_vec(),
            field,
            timestamp_unix,
            seed: SEED_NOTE,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    manifest: &'a RunManifest,
    data: &'a Value,
}

pub fn render(manifest: &RunManifest, data: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { manifest, data }).expect("serialisable");
    s.push('\n');
    s
}
