//! A content-addressed, write-once on-disk cache.
//!
//! Each entry lives at `<dir>/<hh>/<sha256>.json` where the hash is taken
//! over the canonical JSON of its key. Writes go to a temporary file that is
//! renamed into place, so concurrent writers never expose partial entries.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::kl::kl_element;
use crate::kostka::{kostka, marked_table, working_rank, KostkaResult, MarkedTerm};
use crate::macdonald::e_tilde_element;
use crate::parabolic::ModuleElement;

pub const CACHE_FORMAT: &str = "kostka-cache/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheKind {
    ETilde,
    Kl,
    Kostka,
    Marked,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub kind: CacheKind,
    pub rank: usize,
    pub compositions: Vec<Composition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marking: Option<String>,
}

impl CacheKey {
    pub fn new(kind: CacheKind, rank: usize, compositions: &[&Composition]) -> Self {
        CacheKey { kind, rank, compositions: compositions.iter().map(|c| (*c).clone()).collect(), marking: None }
    }

    pub fn digest(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("cache keys serialize");
        hex::encode(Sha256::digest(&canonical))
    }
}

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    format: String,
    key: CacheKey,
    payload: T,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        let h = key.digest();
        self.dir.join(&h[..2]).join(format!("{h}.json"))
    }

    /// Loads the payload stored under `key`, if any. An entry whose stored
    /// key or format does not match is treated as corrupt.
    pub fn get<T: DeserializeOwned>(&self, key: &CacheKey) -> Result<Option<T>> {
        let path = self.path(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let entry: Entry<T> = serde_json::from_slice(&bytes)?;
        if entry.format != CACHE_FORMAT || entry.key != *key {
            return Err(Error::Consistency(format!("cache entry {} does not match its key", path.display())));
        }
        Ok(Some(entry.payload))
    }

    /// Stores `payload` under `key` unless an entry already exists.
    pub fn put<T: Serialize>(&self, key: &CacheKey, payload: &T) -> Result<()> {
        let path = self.path(key);
        if path.exists() {
            return Ok(());
        }
        let parent = path.parent().expect("entry paths have a parent");
        fs::create_dir_all(parent)?;
        let entry = Entry { format: CACHE_FORMAT.to_string(), key: key.clone(), payload };
        let bytes = serde_json::to_vec(&entry)?;
        let tmp = parent.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&bytes)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// `get`, or compute and `put`.
    pub fn get_or_compute<T, F>(&self, key: &CacheKey, compute: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(hit) = self.get(key)? {
            return Ok(hit);
        }
        let value = compute()?;
        self.put(key, &value)?;
        Ok(value)
    }

    pub fn len(&self) -> Result<usize> {
        let mut count = 0;
        for shard in fs::read_dir(&self.dir)? {
            let shard = shard?;
            if shard.file_type()?.is_dir() {
                count += fs::read_dir(shard.path())?
                    .filter_map(|e| e.ok())
                    .filter(|e| e.path().extension().is_some_and(|x| x == "json"))
                    .count();
            }
        }
        Ok(count)
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.len()? == 0)
    }
}

/// `Ẽ_μ` at rank `n`, through the cache when one is given.
pub fn e_tilde_cached(cache: Option<&Cache>, mu: &Composition, n: usize) -> Result<ModuleElement> {
    let compute = || Ok(e_tilde_element(mu, n)?.to_json());
    let json = match cache {
        Some(c) => c.get_or_compute(&CacheKey::new(CacheKind::ETilde, n, &[mu]), compute)?,
        None => compute()?,
    };
    ModuleElement::from_json(&json)
}

/// `M̲^λ` at rank `n`, through the cache when one is given.
pub fn kl_cached(cache: Option<&Cache>, lambda: &Composition, n: usize) -> Result<ModuleElement> {
    let compute = || Ok(kl_element(lambda, n)?.element.to_json());
    let json = match cache {
        Some(c) => c.get_or_compute(&CacheKey::new(CacheKind::Kl, n, &[lambda]), compute)?,
        None => compute()?,
    };
    ModuleElement::from_json(&json)
}

/// `K_{λμ}`, through the cache when one is given.
pub fn kostka_cached(cache: Option<&Cache>, lambda: &Composition, mu: &Composition) -> Result<KostkaResult> {
    let (_, n) = working_rank(lambda, mu);
    match cache {
        Some(c) => c.get_or_compute(&CacheKey::new(CacheKind::Kostka, n, &[lambda, mu]), || kostka(lambda, mu)),
        None => kostka(lambda, mu),
    }
}

/// Every marked `K_{λμ̄}`, through the cache when one is given.
pub fn marked_table_cached(cache: Option<&Cache>, lambda: &Composition, mu: &Composition) -> Result<Vec<MarkedTerm>> {
    let (_, n) = working_rank(lambda, mu);
    match cache {
        Some(c) => c.get_or_compute(&CacheKey::new(CacheKind::Marked, n, &[lambda, mu]), || marked_table(lambda, mu)),
        None => marked_table(lambda, mu),
    }
}
