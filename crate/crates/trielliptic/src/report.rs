//! JSON reports with run manifests.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: &str = "1.0";

/// Keys holding wall-clock measurements; dropped under `--no-timing`.
pub const TIMING_KEYS: [&str; 4] = ["seconds", "runtimeSec", "wallClockSec", "runtime_sec"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogChecksum {
    pub file: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunManifest {
    pub command: Vec<String>,
    pub version: String,
    pub catalogs: Vec<CatalogChecksum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub bounds: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_sec: Option<f64>,
}

impl RunManifest {
    pub fn new(command: Vec<String>) -> Self {
        RunManifest {
            command,
            version: env!("CARGO_PKG_VERSION").into(),
            catalogs: Vec::new(),
            seed: None,
            bounds: BTreeMap::new(),
            jobs: None,
            budget_seconds: None,
            wall_clock_sec: None,
        }
    }

    pub fn bound(&mut self, key: &str, v: impl Into<Value>) {
        self.bounds.insert(key.into(), v.into());
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Checksums of the catalog files in `dir`; built-in tables are hashed as canonical JSON.
pub fn catalog_checksums(dir: Option<&Path>, builtin: &[(&str, Value)]) -> Vec<CatalogChecksum> {
    builtin
        .iter()
        .map(|(file, data)| {
            let path = dir.map(|d| d.join(file)).filter(|p| p.exists());
            match path.and_then(|p| std::fs::read(&p).ok().map(|b| (p, b))) {
                Some((p, bytes)) => CatalogChecksum { file: p.display().to_string(), sha256: sha256_hex(&bytes) },
                None => CatalogChecksum {
                    file: format!("builtin:{file}"),
                    sha256: sha256_hex(data.to_string().as_bytes()),
                },
            }
        })
        .collect()
}

pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            for k in TIMING_KEYS {
                m.remove(k);
            }
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// Report envelope: body fields at top level next to `schemaVersion` and `manifest`.
pub fn assemble(manifest: &RunManifest, body: Value, timing: bool) -> Value {
    let mut out = Map::new();
    out.insert("schemaVersion".into(), SCHEMA_VERSION.into());
    out.insert("manifest".into(), serde_json::to_value(manifest).unwrap_or(Value::Null));
    match body {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    let mut v = Value::Object(out);
    if !timing {
        strip_timing(&mut v);
    }
    v
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

/// Write to `out` or stdout; returns where the report went.
pub fn emit(v: &Value, out: Option<&PathBuf>) -> std::io::Result<String> {
    let text = render(v);
    match out {
        Some(p) => {
            std::fs::write(p, text)?;
            Ok(p.display().to_string())
        }
        None => {
            print!("{text}");
            Ok("<stdout>".into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn timing_is_stripped_everywhere() {
        let mut v = json!({"seconds": 1.5, "a": [{"runtimeSec": 2, "k": 1}], "b": {"wallClockSec": 3}});
        strip_timing(&mut v);
        assert_eq!(v, json!({"a": [{"k": 1}], "b": {}}));
    }

    #[test]
    fn checksum_of_known_bytes() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn envelope_is_stable() {
        let m = RunManifest::new(vec!["git".into(), "strata-dims".into()]);
        let a = render(&assemble(&m, json!({"rows": [1, 2]}), false));
        let b = render(&assemble(&m, json!({"rows": [1, 2]}), false));
        assert_eq!(a, b);
        assert!(a.contains("\"schemaVersion\": \"1.0\""));
    }
}
