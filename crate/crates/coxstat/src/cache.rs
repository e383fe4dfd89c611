//! Tally caches keyed by (label, statistic).
//!
//! On disk a tally is `CXT1`, a little-endian `u32` coefficient count, then
//! for each coefficient a `u32` byte length and the little-endian bytes.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use coxstat_core::polynomials::TallyProvider;
use coxstat_core::{ExactPolynomial, IrreducibleLabel, Statistic};
use num_bigint::BigUint;

use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "COXSTAT_CACHE";
const MAGIC: &[u8; 4] = b"CXT1";

/// `--cache-dir` if given, else `$COXSTAT_CACHE`.
pub fn resolve_cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

pub fn encode(poly: &ExactPolynomial) -> Vec<u8> {
    let mut out = MAGIC.to_vec();
    out.extend_from_slice(&(poly.coeffs().len() as u32).to_le_bytes());
    for c in poly.coeffs() {
        let bytes = c.to_bytes_le();
        out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
        out.extend_from_slice(&bytes);
    }
    out
}

pub fn decode(bytes: &[u8]) -> Option<ExactPolynomial> {
    let rest = bytes.strip_prefix(MAGIC)?;
    let (count, mut rest) = take_u32(rest)?;
    let mut coeffs = Vec::with_capacity(count.min(1 << 16) as usize);
    for _ in 0..count {
        let (len, tail) = take_u32(rest)?;
        let len = len as usize;
        if tail.len() < len {
            return None;
        }
        coeffs.push(BigUint::from_bytes_le(&tail[..len]));
        rest = &tail[len..];
    }
    rest.is_empty().then(|| ExactPolynomial::new(coeffs))
}

fn take_u32(b: &[u8]) -> Option<(u32, &[u8])> {
    let (head, tail) = b.split_first_chunk::<4>()?;
    Some((u32::from_le_bytes(*head), tail))
}

fn file_name(label: &IrreducibleLabel, stat: Statistic) -> String {
    let label: String = label
        .to_string()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    let stat = match stat {
        Statistic::Inv => "inv",
        Statistic::Des => "des",
        Statistic::Ides => "ides",
        Statistic::DesPlusIdes => "desides",
    };
    format!("{label}.{stat}.tally")
}

/// Tallies stored as files in one directory. Unreadable or corrupt entries
/// count as misses.
#[derive(Debug, Clone)]
pub struct FileCache {
    dir: PathBuf,
}

impl FileCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        Ok(FileCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, label: &IrreducibleLabel, stat: Statistic) -> PathBuf {
        self.dir.join(file_name(label, stat))
    }
}

impl TallyProvider for FileCache {
    fn get(&self, label: &IrreducibleLabel, stat: Statistic) -> Option<ExactPolynomial> {
        decode(&fs::read(self.path_for(label, stat)).ok()?)
    }

    fn put(&self, label: &IrreducibleLabel, stat: Statistic, poly: &ExactPolynomial) {
        let path = self.path_for(label, stat);
        let tmp = path.with_extension("tmp");
        // best effort: a failed write only costs a recomputation
        if fs::write(&tmp, encode(poly)).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
}

/// In-process cache, optionally backed by a [`FileCache`].
#[derive(Debug, Default)]
pub struct MemoryCache {
    map: Mutex<HashMap<(IrreducibleLabel, Statistic), ExactPolynomial>>,
    backing: Option<FileCache>,
}

impl MemoryCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_backing(backing: Option<FileCache>) -> Self {
        MemoryCache {
            map: Mutex::default(),
            backing,
        }
    }
}

impl TallyProvider for MemoryCache {
    fn get(&self, label: &IrreducibleLabel, stat: Statistic) -> Option<ExactPolynomial> {
        if let Some(p) = self.map.lock().unwrap().get(&(*label, stat)) {
            return Some(p.clone());
        }
        let p = self.backing.as_ref()?.get(label, stat)?;
        self.map.lock().unwrap().insert((*label, stat), p.clone());
        Some(p)
    }

    fn put(&self, label: &IrreducibleLabel, stat: Statistic, poly: &ExactPolynomial) {
        self.map.lock().unwrap().insert((*label, stat), poly.clone());
        if let Some(b) = &self.backing {
            b.put(label, stat, poly);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_bytes() {
        let p = ExactPolynomial::new(vec![BigUint::from(1u8), BigUint::from(0u8), BigUint::from(1u128 << 100)]);
        assert_eq!(decode(&encode(&p)), Some(p));
        assert_eq!(decode(b"CXT1\x01\x00\x00\x00\x05"), None);
        assert_eq!(decode(b"nope"), None);
    }

    #[test]
    fn file_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = FileCache::new(dir.path()).unwrap();
        let label = IrreducibleLabel::dihedral(7).unwrap();
        assert!(cache.get(&label, Statistic::Des).is_none());
        let p = ExactPolynomial::from_u64(&[1, 12, 1]);
        cache.put(&label, Statistic::Des, &p);
        assert_eq!(cache.get(&label, Statistic::Des), Some(p));
        assert!(cache.path_for(&label, Statistic::Des).ends_with("I2_7_.des.tally"));
    }
}
