//! Process-wide memo tables with concurrent reads and exclusive inserts.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use crate::error::Result;

pub struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub fn new() -> Self {
        Memo { map: RwLock::new(HashMap::new()) }
    }

    pub fn get(&self, key: &K) -> Option<Arc<V>> {
        self.map.read().expect("memo lock poisoned").get(key).cloned()
    }

    /// Returns the cached value or computes it without holding the lock, so
    /// that `compute` may itself consult this table.
    pub fn get_or_try_insert(&self, key: &K, compute: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let value = Arc::new(compute()?);
        let mut map = self.map.write().expect("memo lock poisoned");
        Ok(map.entry(key.clone()).or_insert(value).clone())
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.map.write().expect("memo lock poisoned").clear();
    }
}

impl<K: Eq + Hash + Clone, V> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}
