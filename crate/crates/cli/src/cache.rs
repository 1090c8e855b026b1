use std::path::PathBuf;

use anyhow::{Context, Result};
use lamina_core::lamination::enumerate;
use lamina_core::LaminationStore;

fn default_path() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os("LAMINA_CACHE_DIR") {
        return Some(PathBuf::from(dir).join("bstar.cache"));
    }
    let home = std::env::var_os("HOME")?;
    Some(
        PathBuf::from(home)
            .join(".cache")
            .join("lamina")
            .join("bstar.cache"),
    )
}

/// A parameter lamination at least `max_period` deep, read from the cache
/// when it is deep enough and rebuilt (and written back) otherwise.
///
/// A cache that cannot be read or written is not an error; the store is
/// recomputed.
pub fn store(max_period: u32, explicit: Option<PathBuf>) -> Result<LaminationStore> {
    let path = explicit.or_else(default_path);
    if let Some(p) = &path {
        if let Ok(s) = LaminationStore::load(p) {
            if s.max_period() >= max_period {
                return Ok(s);
            }
        }
    }
    let store = enumerate(max_period).context("enumerating the parameter lamination")?;
    if let Some(p) = &path {
        let written = p
            .parent()
            .map_or(Ok(()), std::fs::create_dir_all)
            .map_err(anyhow::Error::from)
            .and_then(|_| store.save(p).map_err(anyhow::Error::from));
        if let Err(e) = written {
            eprintln!("warning: could not write cache {}: {e}", p.display());
        }
    }
    Ok(store)
}
