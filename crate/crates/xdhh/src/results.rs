//! RunResult files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use sha2::{Digest, Sha256};
use xdhh_core::RunResult;

/// Pretty JSON with a trailing newline.
pub fn to_json(result: &RunResult) -> String {
    let mut s = serde_json::to_string_pretty(result).expect("run results always serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> serde_json::Result<RunResult> {
    serde_json::from_str(text)
}

/// `consumed,value` rows of the fitness trace.
pub fn trace_csv(result: &RunResult) -> String {
    let mut out = String::from("consumed,value\n");
    for (consumed, value) in result.trace.points() {
        out.push_str(&format!("{consumed},{value}\n"));
    }
    out
}

/// Keeps `[A-Za-z0-9._-]`, maps everything else to `_`.
pub fn sanitize(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') { c } else { '_' })
        .collect();
    if s.is_empty() || s.chars().all(|c| c == '.') {
        s.replace('.', "_") + "_"
    } else {
        s
    }
}

/// `{domain}__{instance}__{algorithm}__s{seed}.json`
pub fn file_name(domain: &str, instance: &str, algorithm: &str, seed: u64) -> String {
    format!(
        "{}__{}__{}__s{seed}.json",
        sanitize(domain),
        sanitize(instance),
        sanitize(algorithm)
    )
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes `bytes` to `dir/name` through a temporary file and a rename.
pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> anyhow::Result<PathBuf> {
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
    f.write_all(bytes)?;
    f.sync_all()?;
    drop(f);
    fs::rename(&tmp, &target).with_context(|| format!("renaming into {}", target.display()))?;
    Ok(target)
}
