//! On-disk Groebner basis cache. Purely an optimization: every failure is a
//! warning and falls back to recomputation.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use spl_core::groebner::{source_hash, GroebnerBasis};
use spl_core::polyexpr::{parse_sid, to_sid};
use spl_core::polyring::{Polynomial, RingRef};
use spl_core::report::TOOL_VERSION;

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    key: String,
    tool_version: String,
    order: String,
    basis: String,
}

pub struct Cache {
    dir: PathBuf,
}

fn warn(msg: impl std::fmt::Display) {
    eprintln!("warning: cache: {msg}");
}

impl Cache {
    pub fn from_env() -> Self {
        let dir = std::env::var_os("SPL_CACHE_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".spl-cache"));
        Cache { dir }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn key(ring: &RingRef, gens: &[Polynomial]) -> String {
        source_hash(ring, gens)
    }

    /// Looks up a basis. Corrupt entries are deleted.
    pub fn get(&self, ring: &RingRef, key: &str) -> Option<GroebnerBasis> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                warn(format_args!("{}: {e}", path.display()));
                return None;
            }
        };
        let parsed = serde_json::from_str::<CacheEntry>(&text)
            .ok()
            .filter(|e| e.key == key && e.order == ring.order().name())
            .and_then(|e| {
                if e.tool_version != TOOL_VERSION {
                    return Some(None);
                }
                let file = parse_sid(&e.basis).ok()?;
                let basis = file
                    .gens
                    .iter()
                    .map(|g| g.to_ring(ring))
                    .collect::<Result<Vec<_>, _>>()
                    .ok()?;
                Some(Some(GroebnerBasis::from_parts(ring, basis, key.to_string())))
            });
        match parsed {
            Some(hit) => hit,
            None => {
                warn(format_args!("discarding corrupt entry {}", path.display()));
                if let Err(e) = fs::remove_file(&path) {
                    warn(format_args!("{}: {e}", path.display()));
                }
                None
            }
        }
    }

    /// Stores a basis with a temp file and rename, so concurrent writers never
    /// expose a partial entry.
    pub fn put(&self, key: &str, gb: &GroebnerBasis) {
        let entry = CacheEntry {
            key: key.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            order: gb.order().name(),
            basis: to_sid(gb.ring(), gb.basis()),
        };
        let write = || -> std::io::Result<()> {
            fs::create_dir_all(&self.dir)?;
            let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
            tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
            tmp.persist(self.path(&entry.key)).map_err(|e| e.error)?;
            Ok(())
        };
        if let Err(e) = write() {
            warn(format_args!("{}: {e}", self.dir.display()));
        }
    }
}
