//! Content-addressed on-disk memo of cohomology tables.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use sha2::{Digest, Sha256};

use super::chamber::{cohomology, CohomologyTable};
use crate::error::{Error, Result};
use crate::toric::{ToricThreefold, WeilDivisor};

pub const CACHE_FILE: &str = "cohomology.json";

/// JSON map from hex content hash to cohomology table. A file that fails to
/// parse is ignored and rewritten.
#[derive(Debug)]
pub struct CohomologyCache {
    path: PathBuf,
    entries: Mutex<BTreeMap<String, CohomologyTable>>,
}

pub fn cache_key(x: &ToricThreefold, d: &WeilDivisor) -> String {
    let mut h = Sha256::new();
    h.update(x.content_hash().as_bytes());
    for a in &d.coeffs {
        h.update(a.to_le_bytes());
    }
    hex::encode(h.finalize())
}

impl CohomologyCache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        let path = dir.join(CACHE_FILE);
        let entries = fs::read_to_string(&path)
            .ok()
            .and_then(|text| serde_json::from_str::<BTreeMap<String, CohomologyTable>>(&text).ok())
            .map(|m| m.into_iter().filter(|(_, t)| CohomologyTable::new(t.h) == *t).collect())
            .unwrap_or_default();
        Ok(CohomologyCache { path, entries: Mutex::new(entries) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, x: &ToricThreefold, d: &WeilDivisor) -> Option<CohomologyTable> {
        self.entries.lock().unwrap().get(&cache_key(x, d)).copied()
    }

    pub fn get_or_compute(&self, x: &ToricThreefold, d: &WeilDivisor) -> Result<CohomologyTable> {
        if let Some(t) = self.get(x, d) {
            return Ok(t);
        }
        let table = cohomology(x, d)?;
        let mut entries = self.entries.lock().unwrap();
        entries.insert(cache_key(x, d), table);
        self.persist(&entries)?;
        Ok(table)
    }

    /// Atomic replace: write a sibling temp file, then rename over the target.
    fn persist(&self, entries: &BTreeMap<String, CohomologyTable>) -> Result<()> {
        let dir = self.path.parent().unwrap_or_else(|| Path::new("."));
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", self.path.display()));
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        let text = serde_json::to_string_pretty(entries).map_err(|e| Error::Cache(e.to_string()))?;
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.persist(&self.path).map_err(|e| io(e.error))?;
        Ok(())
    }
}
