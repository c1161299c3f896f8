//! On-disk cache for q-expansion coefficient arrays.
//!
//! Entries are keyed by a canonical descriptor of (eta factors, scale,
//! order). Files carry the magic header `HGMQ1`, a format version, the
//! descriptor, and a SHA-256 checksum of the payload; a corrupt or
//! mismatched entry is recomputed and atomically replaced.

use num::BigInt;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub const MAGIC: &str = "HGMQ1";
pub const FORMAT_VERSION: u32 = 1;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "HGM_CACHE_DIR";

#[derive(Debug, Clone)]
pub struct ExpansionCache {
    dir: PathBuf,
}

impl ExpansionCache {
    pub fn new(dir: impl Into<PathBuf>) -> crate::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(ExpansionCache { dir })
    }

    /// Cache rooted at `$HGM_CACHE_DIR`, or the given default otherwise.
    pub fn from_env_or(default: impl Into<PathBuf>) -> crate::Result<Self> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) => ExpansionCache::new(PathBuf::from(dir)),
            None => ExpansionCache::new(default),
        }
    }

    fn entry_path(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        let mut name = String::with_capacity(64);
        for b in digest.iter() {
            name.push_str(&format!("{b:02x}"));
        }
        self.dir.join(format!("{name}.hgmq"))
    }

    /// Fetch the coefficient array for `key`, computing and storing it on
    /// miss. Hits return bitwise-identical coefficients to recomputation;
    /// a corrupt entry is recomputed and overwritten with a warning.
    pub fn get_or_compute(
        &self,
        key: &str,
        compute: impl FnOnce() -> Vec<BigInt>,
    ) -> crate::Result<Vec<BigInt>> {
        let path = self.entry_path(key);
        if let Some(coeffs) = self.try_read(&path, key) {
            return Ok(coeffs);
        }
        let coeffs = compute();
        self.store(&path, key, &coeffs)?;
        Ok(coeffs)
    }

    /// True when `key` is present and valid (used by transparency tests).
    pub fn contains(&self, key: &str) -> bool {
        let path = self.entry_path(key);
        self.try_read(&path, key).is_some()
    }

    fn try_read(&self, path: &Path, key: &str) -> Option<Vec<BigInt>> {
        let text = std::fs::read_to_string(path).ok()?;
        let mut lines = text.lines();
        let header = lines.next()?;
        let mut hp = header.split_whitespace();
        if hp.next() != Some(MAGIC) {
            eprintln!("cache: bad magic in {}; recomputing", path.display());
            return None;
        }
        let ver: u32 = hp.next()?.strip_prefix('v')?.parse().ok()?;
        if ver != FORMAT_VERSION {
            // older/newer format: ignore the entry
            return None;
        }
        let key_line = lines.next()?;
        if key_line.strip_prefix("key ")? != key {
            eprintln!("cache: key collision in {}; recomputing", path.display());
            return None;
        }
        let sum_line = lines.next()?.strip_prefix("sha256 ")?.to_string();
        let n: usize = lines.next()?.parse().ok()?;
        let payload: Vec<&str> = lines.collect();
        if payload.len() != n {
            eprintln!("cache: truncated entry {}; recomputing", path.display());
            return None;
        }
        let joined = payload.join("\n");
        if hex_digest(joined.as_bytes()) != sum_line {
            eprintln!("cache: checksum mismatch in {}; recomputing", path.display());
            return None;
        }
        let mut coeffs = Vec::with_capacity(n);
        for line in payload {
            coeffs.push(line.parse::<BigInt>().ok()?);
        }
        Some(coeffs)
    }

    fn store(&self, path: &Path, key: &str, coeffs: &[BigInt]) -> crate::Result<()> {
        let payload = coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join("\n");
        let body = format!(
            "{MAGIC} v{FORMAT_VERSION}\nkey {key}\nsha256 {}\n{}\n{payload}\n",
            hex_digest(payload.as_bytes()),
            coeffs.len()
        );
        // single-writer discipline: write to a temp name, then rename
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, body)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest.iter() {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::Cell;

    #[test]
    fn hit_skips_recompute() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ExpansionCache::new(dir.path()).unwrap();
        let calls = Cell::new(0);
        let compute = || {
            calls.set(calls.get() + 1);
            vec![BigInt::from(1), BigInt::from(-7), BigInt::from(42)]
        };
        let a = cache.get_or_compute("eta:1/2^3|grid=48|order=10", compute).unwrap();
        let b = cache
            .get_or_compute("eta:1/2^3|grid=48|order=10", || {
                calls.set(calls.get() + 1);
                unreachable!("must hit cache")
            })
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(calls.get(), 1);
    }

    #[test]
    fn corrupt_entry_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ExpansionCache::new(dir.path()).unwrap();
        let key = "eta:2^1|grid=24|order=5";
        cache.get_or_compute(key, || vec![BigInt::from(9)]).unwrap();
        // corrupt the payload
        let path = cache.entry_path(key);
        let mut text = std::fs::read_to_string(&path).unwrap();
        text = text.replace('9', "8");
        std::fs::write(&path, text).unwrap();
        let v = cache.get_or_compute(key, || vec![BigInt::from(9)]).unwrap();
        assert_eq!(v, vec![BigInt::from(9)]);
        assert!(cache.contains(key));
    }

    #[test]
    fn version_mismatch_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ExpansionCache::new(dir.path()).unwrap();
        let key = "eta:1^1|grid=24|order=3";
        cache.get_or_compute(key, || vec![BigInt::from(3)]).unwrap();
        let path = cache.entry_path(key);
        let text = std::fs::read_to_string(&path).unwrap().replace("v1", "v999");
        std::fs::write(&path, text).unwrap();
        let v = cache.get_or_compute(key, || vec![BigInt::from(3)]).unwrap();
        assert_eq!(v, vec![BigInt::from(3)]);
    }
}
