//! On-disk cache of class distributions, one `classes_n<k>.json` per degree.
//!
//! ```json
//! {"n": 3, "classes": [{"lambda": [3], "counts": {"1": 2}, "size": 2}, ...]}
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{enumerate_all_classes, ClassDistribution, OracleConfig};
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    n: usize,
    classes: Vec<CacheEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    lambda: Vec<usize>,
    counts: BTreeMap<usize, u64>,
    size: u64,
}

pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("classes_n{n}.json"))
}

pub fn store(dir: &Path, n: usize, classes: &[ClassDistribution]) -> Result<()> {
    let file = CacheFile {
        n,
        classes: classes
            .iter()
            .map(|d| CacheEntry { lambda: d.lambda.parts().to_vec(), counts: d.counts.clone(), size: d.class_size })
            .collect(),
    };
    fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
    let path = cache_path(dir, n);
    let json = serde_json::to_string(&file).map_err(|e| Error::Cache(e.to_string()))?;
    fs::write(&path, json).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
}

/// `Ok(None)` when no cache file exists. A file that exists but fails
/// validation is an error.
pub fn load(dir: &Path, n: usize) -> Result<Option<Vec<ClassDistribution>>> {
    let path = cache_path(dir, n);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
    };
    let bad = |msg: String| Error::Cache(format!("{}: {msg}", path.display()));
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    if file.n != n {
        return Err(bad(format!("holds n={} instead of {n}", file.n)));
    }
    let expected = partitions_of(n);
    if file.classes.len() != expected.len() {
        return Err(bad(format!("{} classes, expected {}", file.classes.len(), expected.len())));
    }
    let mut out = Vec::with_capacity(expected.len());
    for (entry, lambda) in file.classes.into_iter().zip(expected) {
        let got = Partition::new(entry.lambda).map_err(|e| bad(e.to_string()))?;
        if got != lambda {
            return Err(bad(format!("class ({got}) out of order, expected ({lambda})")));
        }
        let total: u64 = entry.counts.values().sum();
        if total != entry.size || BigUint::from(entry.size) != lambda.class_size() {
            return Err(bad(format!("class ({lambda}) fails the class-size check")));
        }
        out.push(ClassDistribution::from_counts(lambda, entry.counts));
    }
    Ok(Some(out))
}

/// Reads the cache for `n` if present, otherwise enumerates and writes it.
pub fn load_or_compute(dir: &Path, n: usize, cfg: &OracleConfig) -> Result<Vec<ClassDistribution>> {
    if let Some(classes) = load(dir, n)? {
        return Ok(classes);
    }
    let classes = enumerate_all_classes(n, cfg)?;
    store(dir, n, &classes)?;
    Ok(classes)
}
