//! On-disk cache of census records.
//!
//! One JSON file per (family labels, n, mode, algorithm version), named by
//! the SHA-256 of that key. Writes go to a temporary file that is renamed
//! into place, so readers never see a partial record. Loaded records are
//! re-validated and treated as missing when they fail.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

use super::{census, family_labels, CensusOptions, CensusRecord, Mode, ALGORITHM_VERSION};
use crate::error::{Error, Result};
use crate::graph::{CanonicalLabel, Graph};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "SPEXLAB_CACHE_DIR";

const MANIFESTS: &str = "manifests.jsonl";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// The cache named by `SPEXLAB_CACHE_DIR`, if set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::new(PathBuf::from(d)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(forbidden: &[CanonicalLabel], n: usize, mode: Mode) -> String {
        let mut h = Sha256::new();
        h.update(format!("census v{ALGORITHM_VERSION}\n{mode}\n{n}\n").as_bytes());
        for l in forbidden {
            h.update(l.as_str().as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }

    fn path(&self, family: &[Graph], n: usize, mode: Mode) -> PathBuf {
        let key = Cache::key(&family_labels(family), n, mode);
        self.dir.join(format!("census-{key}.json"))
    }

    /// The stored record, `None` if absent, `Error::Invalid` if it fails
    /// re-validation.
    pub fn load(&self, family: &[Graph], n: usize, mode: Mode) -> Result<Option<CensusRecord>> {
        let path = self.path(family, n, mode);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let record: CensusRecord =
            serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        if record.n != n || record.mode != mode || record.algorithm_version != ALGORITHM_VERSION {
            return Err(Error::Invalid(format!("{}: key fields do not match", path.display())));
        }
        record.validate(family)?;
        Ok(Some(record))
    }

    /// Stores `record` without timings, atomically.
    pub fn store(&self, family: &[Graph], record: &CensusRecord) -> Result<PathBuf> {
        let path = self.path(family, record.n, record.mode);
        let stored = CensusRecord {
            timings: None,
            ..record.clone()
        };
        self.write_atomic(&path, stored.to_json().as_bytes())?;
        Ok(path)
    }

    fn write_atomic(&self, path: &Path, bytes: &[u8]) -> Result<()> {
        let mut tmp = NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }

    /// Cached record if valid, else computed and stored. The second value
    /// says whether the cache answered.
    pub fn census(
        &self,
        n: usize,
        family: &[Graph],
        mode: Mode,
        opts: &CensusOptions,
    ) -> Result<(CensusRecord, bool)> {
        match self.load(family, n, mode) {
            Ok(Some(r)) => return Ok((r, true)),
            Ok(None) | Err(Error::Invalid(_)) => {}
            Err(e) => return Err(e),
        }
        let record = census(n, family, mode, opts)?;
        self.store(family, &record)?;
        Ok((record, false))
    }

    /// Appends one line to the manifest log.
    pub fn append_manifest(&self, line: &str) -> Result<()> {
        if line.contains('\n') {
            return Err(Error::input("manifest entries are single lines"));
        }
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.dir.join(MANIFESTS))?;
        writeln!(f, "{line}")?;
        Ok(())
    }

    pub fn manifest_path(&self) -> PathBuf {
        self.dir.join(MANIFESTS)
    }
}
