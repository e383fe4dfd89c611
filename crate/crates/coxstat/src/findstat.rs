//! FindStat value exports, cached on disk as `findstat/<id>.csv`.
//!
//! Downloading needs the `fetch` feature. The export URL is
//! `$COXSTAT_FINDSTAT_URL` with `{id}` substituted, defaulting to
//! [`DEFAULT_URL`]. Without the feature only cached exports are read.

use std::fs;
use std::path::{Path, PathBuf};

use coxstat_core::interplab::StatisticDataset;

use crate::error::{Error, Result};
use crate::ingest::{ingest_str, Format};

pub const URL_ENV: &str = "COXSTAT_FINDSTAT_URL";
pub const DEFAULT_URL: &str = "https://www.findstat.org/StatisticsDatabase/{id}/values.csv";

/// `St` followed by six digits.
pub fn is_valid_id(id: &str) -> bool {
    id.len() == 8 && id.starts_with("St") && id[2..].bytes().all(|b| b.is_ascii_digit())
}

pub fn cache_path(cache_dir: &Path, id: &str) -> PathBuf {
    cache_dir.join("findstat").join(format!("{id}.csv"))
}

pub fn load_cached(id: &str, cache_dir: &Path) -> Result<StatisticDataset> {
    if !is_valid_id(id) {
        return Err(Error::NotFound(id.to_string()));
    }
    let path = cache_path(cache_dir, id);
    match fs::read_to_string(&path) {
        Ok(text) => ingest_str(&text, Format::FindstatCsv, id),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Err(Error::CacheMiss(id.to_string())),
        Err(e) => Err(Error::io(path, e)),
    }
}

/// Cached export if present, else a download (with the `fetch` feature).
pub fn fetch_findstat(id: &str, cache_dir: &Path) -> Result<StatisticDataset> {
    match load_cached(id, cache_dir) {
        Err(Error::CacheMiss(_)) => {}
        other => return other,
    }
    let text = download(id)?;
    // validate before caching so a bad body is never persisted
    let ds = ingest_str(&text, Format::FindstatCsv, id)?;
    let path = cache_path(cache_dir, id);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(&path, text.as_bytes()).map_err(|e| Error::io(&path, e))?;
    Ok(ds)
}

pub fn export_url(id: &str) -> String {
    std::env::var(URL_ENV)
        .unwrap_or_else(|_| DEFAULT_URL.to_string())
        .replace("{id}", id)
}

#[cfg(feature = "fetch")]
fn download(id: &str) -> Result<String> {
    let url = export_url(id);
    match ureq::get(&url).call() {
        Ok(mut resp) => resp
            .body_mut()
            .read_to_string()
            .map_err(|e| Error::Network(e.to_string())),
        Err(ureq::Error::StatusCode(404)) => Err(Error::NotFound(id.to_string())),
        Err(e) => Err(Error::Network(format!("{url}: {e}"))),
    }
}

#[cfg(not(feature = "fetch"))]
fn download(id: &str) -> Result<String> {
    Err(Error::CacheMiss(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids() {
        assert!(is_valid_id("St000021"));
        assert!(!is_valid_id("St21"));
        assert!(!is_valid_id("Mp000021"));
    }

    #[test]
    fn cached_reads_are_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), "St000021");
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, "[1,2];0\n[2,1];1\n").unwrap();
        let a = fetch_findstat("St000021", dir.path()).unwrap();
        let b = fetch_findstat("St000021", dir.path()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.histogram(2).unwrap().to_u64_coeffs().unwrap(), vec![1, 1]);
    }

    #[test]
    fn unknown_and_missing() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(load_cached("nonsense", dir.path()), Err(Error::NotFound(_))));
        assert!(matches!(load_cached("St999999", dir.path()), Err(Error::CacheMiss(_))));
    }
}
