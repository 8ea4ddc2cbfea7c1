//! Knitted catalogs stored per algebra fingerprint under `$QFB_CACHE_DIR` (default `.qfb-cache`).

use qfb_core::algebra::Algebra;
use qfb_core::io::CatalogFile;
use qfb_core::knit::{knit_with, Catalog, KnitError, KnitLimits};
use qfb_core::module::Rep;
use std::path::PathBuf;
use std::sync::Arc;

pub fn dir() -> PathBuf {
    std::env::var_os("QFB_CACHE_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".qfb-cache"))
}

fn path(alg: &Algebra) -> PathBuf {
    dir().join(format!("{}.catalog.json", alg.fingerprint()))
}

fn load(alg: &Arc<Algebra>) -> Option<Catalog> {
    let p = path(alg);
    let text = std::fs::read_to_string(&p).ok()?;
    match serde_json::from_str::<CatalogFile>(&text).map_err(Into::into).and_then(|f| f.into_catalog(alg)) {
        Ok(c) => Some(c),
        Err(e) => {
            log::warn!("discarding cached catalog {}: {e}", p.display());
            let _ = std::fs::remove_file(&p);
            None
        }
    }
}

fn store(c: &Catalog) {
    let p = path(&c.alg);
    let write = || -> std::io::Result<()> {
        std::fs::create_dir_all(dir())?;
        let tmp = p.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, serde_json::to_vec(&CatalogFile::from_catalog(c))?)?;
        std::fs::rename(&tmp, &p)
    };
    if let Err(e) = write() {
        log::warn!("could not write catalog cache {}: {e}", p.display());
    }
}

/// The catalog of `alg`, from the cache when allowed. Supplemented runs are never cached.
pub fn catalog(alg: &Arc<Algebra>, use_cache: bool, limits: KnitLimits, extra: &[Rep]) -> Result<Catalog, KnitError> {
    let cacheable = use_cache && extra.is_empty();
    if cacheable {
        if let Some(c) = load(alg) {
            return Ok(c);
        }
    }
    let c = knit_with(alg, limits, extra)?;
    if cacheable {
        store(&c);
    }
    Ok(c)
}
