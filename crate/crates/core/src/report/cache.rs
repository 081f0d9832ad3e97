//! On-disk cache of decomposition tables: one JSON file per `(p, kind)`.
//!
//! The cache only ever saves work. Unreadable, corrupt or outdated files are
//! treated as empty and overwritten on the next store.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::PrimeChar;

pub const CACHE_FORMAT_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "LIETILT_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CacheKind {
    /// Tilting decomposition of `E^{⊗r}`.
    TensorPower,
    /// Tilting decomposition of `L^r(E)`.
    LiePower,
}

impl CacheKind {
    fn file_stem(self) -> &'static str {
        match self {
            CacheKind::TensorPower => "tensor-power",
            CacheKind::LiePower => "lie-power",
        }
    }
}

/// Degree `r` → (weight → coefficient).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedTable {
    pub format_version: u32,
    pub kind: CacheKind,
    pub p: u64,
    pub tables: BTreeMap<u32, BTreeMap<u32, i128>>,
}

impl CachedTable {
    pub fn empty(kind: CacheKind, p: PrimeChar) -> Self {
        CachedTable {
            format_version: CACHE_FORMAT_VERSION,
            kind,
            p: p.get(),
            tables: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    /// `$LIETILT_CACHE_DIR`, else `$XDG_CACHE_HOME/lietilt`, else `$HOME/.cache/lietilt`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(d) = std::env::var_os(CACHE_DIR_ENV) {
            return Some(PathBuf::from(d));
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(Path::new(&d).join("lietilt"));
        }
        std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("lietilt"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, kind: CacheKind, p: PrimeChar) -> PathBuf {
        self.dir
            .join(format!("{}-p{}.json", kind.file_stem(), p.get()))
    }

    /// Never fails: anything unusable comes back as an empty table.
    pub fn load(&self, kind: CacheKind, p: PrimeChar) -> CachedTable {
        let parsed = fs::read(self.path(kind, p))
            .ok()
            .and_then(|bytes| serde_json::from_slice::<CachedTable>(&bytes).ok());
        match parsed {
            Some(t)
                if t.format_version == CACHE_FORMAT_VERSION && t.kind == kind && t.p == p.get() =>
            {
                t
            }
            _ => CachedTable::empty(kind, p),
        }
    }

    /// Writes to a temporary file in the cache directory and renames it over
    /// the target.
    pub fn store(&self, table: &CachedTable) -> Result<()> {
        let p = PrimeChar::new(table.p)?;
        fs::create_dir_all(&self.dir).map_err(cache_err)?;
        let target = self.path(table.kind, p);
        let tmp = self.dir.join(format!(
            ".{}.{}.tmp",
            target
                .file_name()
                .and_then(|n| n.to_str())
                .unwrap_or("cache"),
            std::process::id()
        ));
        let bytes = serde_json::to_vec(table).map_err(cache_err)?;
        let mut f = fs::File::create(&tmp).map_err(cache_err)?;
        f.write_all(&bytes).map_err(cache_err)?;
        f.sync_all().map_err(cache_err)?;
        drop(f);
        fs::rename(&tmp, &target).map_err(cache_err)
    }
}

fn cache_err(e: impl std::fmt::Display) -> Error {
    Error::Cache(e.to_string())
}
