//! Content-addressed store of solve results, keyed by case and configuration.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use wallach_core::catalog::CaseId;

use crate::format::{SolveDoc, SOLVE_FORMAT};

pub const CACHE_ENV: &str = "EW_CACHE_DIR";

/// `$EW_CACHE_DIR`, else `$XDG_CACHE_HOME/wallach`, else `~/.cache/wallach`.
pub fn default_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("wallach");
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("wallach"),
        None => PathBuf::from(".wallach-cache"),
    }
}

/// Hex digest of the case name, tool version, output format and configuration text.
pub fn key(case: CaseId, config: &str) -> String {
    let mut h = Sha256::new();
    for part in [SOLVE_FORMAT, env!("CARGO_PKG_VERSION"), case.name(), config] {
        h.update(part.as_bytes());
        h.update([0u8]);
    }
    format!("{:x}", h.finalize())
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    pub fn from_env() -> Cache {
        Cache::new(default_dir())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, case: CaseId, key: &str) -> PathBuf {
        self.dir.join(format!("{}-{}.json", case.name(), &key[..16]))
    }

    /// A stored document, if present and readable.
    pub fn load(&self, case: CaseId, key: &str) -> Option<SolveDoc> {
        let text = fs::read_to_string(self.path(case, key)).ok()?;
        let doc: SolveDoc = serde_json::from_str(&text).ok()?;
        (doc.format == SOLVE_FORMAT && doc.case == case.name()).then_some(doc)
    }

    /// Writes through a temporary file so readers never see partial output.
    pub fn store(&self, case: CaseId, key: &str, doc: &SolveDoc) -> io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(case, key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(doc)? + "\n")?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}
