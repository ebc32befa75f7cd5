//! On-disk cache of echelon snapshots.
//!
//! Files are named by a digest of the hit-space key and written through a
//! temporary file that is renamed into place.

use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::linalg::{EchelonBasis, SnapshotHeader};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "HITPROB_CACHE";

/// Default cache directory, relative to the working directory.
pub const DEFAULT_DIR: &str = ".hitprob-cache";

/// Directory from `HITPROB_CACHE`, or the default.
pub fn default_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(DEFAULT_DIR), PathBuf::from)
}

pub fn file_for(dir: &Path, key: &str, k: usize, n: u32) -> PathBuf {
    let digest = Sha256::digest(key.as_bytes());
    let hex: String = digest.iter().take(12).map(|b| format!("{b:02x}")).collect();
    dir.join(format!("k{k}-n{n}-{hex}.hpf2"))
}

/// Loads a snapshot if present; unreadable files count as misses.
pub fn load(dir: &Path, key: &str, k: usize, n: u32) -> Result<Option<EchelonBasis>> {
    let path = file_for(dir, key, k, n);
    if !path.exists() {
        return Ok(None);
    }
    match EchelonBasis::restore(&path, None) {
        Ok((hdr, basis)) if hdr.k as usize == k && hdr.degree == n => Ok(Some(basis)),
        _ => Ok(None),
    }
}

pub fn store(dir: &Path, key: &str, k: usize, n: u32, basis: &EchelonBasis) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = file_for(dir, key, k, n);
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut w = std::io::BufWriter::new(tmp.as_file_mut());
        basis.write_snapshot(&mut w, SnapshotHeader { k: k as u16, degree: n })?;
        w.flush()?;
    }
    tmp.persist(&path).map_err(|e| e.error)?;
    Ok(path)
}
