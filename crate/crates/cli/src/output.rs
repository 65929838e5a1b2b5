//! Canonical JSON: sorted keys, a top-level schema version, trailing newline.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::{CliError, CliResult};

pub const SCHEMA_VERSION: u64 = 1;

/// Serializes `value` (which must be a JSON object) with sorted keys and
/// `"schema_version"` added at the top level.
pub fn canonical_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut v = serde_json::to_value(value)?;
    match &mut v {
        Value::Object(map) => {
            map.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        }
        _ => return Err(CliError::Config("top-level output must be an object".into())),
    }
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// Writes to `out`, or to stdout when absent.
pub fn emit(body: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
