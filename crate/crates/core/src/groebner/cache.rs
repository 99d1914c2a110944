use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::numeric::Field;
use crate::polyring::{PolyRing, Polynomial};

/// Bumped whenever a change could alter cached results.
pub const ALGORITHM_VERSION: &str = "rr-gb-1";

/// Stable hash of a generator list: generators are made monic, printed,
/// sorted and deduplicated, so permutations and scalings of the input
/// hash identically.
pub fn canonical_hash<C: Field>(ring: &PolyRing, generators: &[Polynomial<C>]) -> String {
    let mut lines: Vec<String> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic().expect("nonzero").to_string())
        .collect();
    lines.sort();
    lines.dedup();
    let mut h = Sha256::new();
    h.update(ALGORITHM_VERSION.as_bytes());
    h.update(format!(
        "\nchar {}\nvars {}\norder {}\n",
        ring.characteristic(),
        ring.vars().join(" "),
        ring.order().name()
    ));
    for l in &lines {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

/// One cached Gröbner/Hilbert computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbCacheEntry {
    pub input_hash: String,
    pub algorithm_version: String,
    pub order: String,
    pub char: u64,
    pub vars: Vec<String>,
    pub basis_leading_monomials: Vec<Vec<u32>>,
    pub hilbert_numerator: Vec<i64>,
    pub wall_time_ms: u128,
}

impl GbCacheEntry {
    fn file_name(input_hash: &str, n: Option<u32>) -> String {
        match n {
            Some(n) => format!("{input_hash}-n{n}.json"),
            None => format!("{input_hash}.json"),
        }
    }

    pub fn path(dir: &Path, input_hash: &str, n: Option<u32>) -> PathBuf {
        dir.join(Self::file_name(input_hash, n))
    }

    /// Loads an entry; stale versions or unreadable files count as misses.
    pub fn load(dir: &Path, input_hash: &str, n: Option<u32>) -> Option<Self> {
        let text = std::fs::read_to_string(Self::path(dir, input_hash, n)).ok()?;
        let entry: GbCacheEntry = serde_json::from_str(&text).ok()?;
        (entry.algorithm_version == ALGORITHM_VERSION && entry.input_hash == input_hash)
            .then_some(entry)
    }

    /// Writes via a temporary file and rename so readers never observe a
    /// partial entry.
    pub fn store(&self, dir: &Path, n: Option<u32>) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = Self::path(dir, &self.input_hash, n);
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(serde_json::to_string_pretty(self)?.as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(path)
    }
}
