//! Persistent caches for component builds and decided congruence pairs.
//!
//! Both caches are content-addressed under a directory of JSON files and
//! write atomically (temp file in the same directory, then rename), so
//! parallel runs can share a cache directory. A warm cache returns exactly
//! the bytes a cold run would produce; corrupt or unreadable entries are
//! treated as misses.

use std::collections::{BTreeMap, HashMap};
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::crystal::QuasiCrystal;
use crate::error::Result;
use crate::graphs::{self, ComponentGraph};
use crate::products::ProductMode;
use crate::words::Word;

fn sha_hex(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn write_atomic(dir: &Path, path: &Path, contents: &str) -> Result<()> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Cache key for a decided congruence pair: base identity, mode, and the
/// shortlex-ordered pair of word literals.
pub fn pair_key(base: &QuasiCrystal, mode: ProductMode, u: &Word, v: &Word) -> String {
    let (first, second) = if u <= v { (u, v) } else { (v, u) };
    format!(
        "{}|{}|{}|{}",
        base.label(),
        mode,
        first.display(base),
        second.display(base)
    )
}

#[derive(Serialize, Deserialize)]
struct PairEntry {
    key: String,
    equivalent: bool,
}

/// Decided-pair cache: one JSON file per pair, keyed by the SHA-256 of
/// [`pair_key`]. `PairCache::off` gives a purely in-memory cache.
pub struct PairCache {
    dir: Option<PathBuf>,
    mem: HashMap<String, bool>,
}

impl PairCache {
    /// In-memory only; nothing touches the filesystem.
    pub fn off() -> PairCache {
        PairCache {
            dir: None,
            mem: HashMap::new(),
        }
    }

    pub fn open(dir: impl Into<PathBuf>) -> Result<PairCache> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(PairCache {
            dir: Some(dir),
            mem: HashMap::new(),
        })
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("pair-{}.json", sha_hex(key))))
    }

    pub fn get(&mut self, key: &str) -> Option<bool> {
        if let Some(&hit) = self.mem.get(key) {
            return Some(hit);
        }
        let path = self.path_for(key)?;
        let text = std::fs::read_to_string(path).ok()?;
        let entry: PairEntry = serde_json::from_str(&text).ok()?;
        if entry.key != key {
            return None; // hash collision or foreign file: recompute
        }
        self.mem.insert(key.to_string(), entry.equivalent);
        Some(entry.equivalent)
    }

    pub fn put(&mut self, key: &str, equivalent: bool) -> Result<()> {
        self.mem.insert(key.to_string(), equivalent);
        if let (Some(dir), Some(path)) = (self.dir.clone(), self.path_for(key)) {
            let entry = PairEntry {
                key: key.to_string(),
                equivalent,
            };
            let mut text = serde_json::to_string_pretty(&entry)?;
            text.push('\n');
            write_atomic(&dir, &path, &text)?;
        }
        Ok(())
    }
}

/// Component cache: the component JSON is stored once under the SHA-256 of
/// `(base id, mode, shortlex-least vertex)`, and a per-(base, mode) index
/// file maps every vertex word of the component to that key, so any later
/// query of any word in the component is a hit.
pub struct ComponentCache {
    dir: PathBuf,
}

impl ComponentCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<ComponentCache> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(ComponentCache { dir })
    }

    fn index_path(&self, base: &QuasiCrystal, mode: ProductMode) -> PathBuf {
        let key = sha_hex(&format!("{}|{}", base.label(), mode));
        self.dir.join(format!("index-{key}.json"))
    }

    fn component_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("component-{key}.json"))
    }

    fn read_index(&self, base: &QuasiCrystal, mode: ProductMode) -> BTreeMap<String, String> {
        std::fs::read_to_string(self.index_path(base, mode))
            .ok()
            .and_then(|text| serde_json::from_str(&text).ok())
            .unwrap_or_default()
    }

    /// Fetch the cached component containing `word`, if any.
    pub fn lookup(
        &self,
        base: &QuasiCrystal,
        mode: ProductMode,
        word: &Word,
    ) -> Option<ComponentGraph> {
        let index = self.read_index(base, mode);
        let key = index.get(&word.display(base))?;
        let text = std::fs::read_to_string(self.component_path(key)).ok()?;
        graphs::import_json(base, &text).ok()
    }

    /// Store a freshly built component and register all its vertices in the
    /// index. Returns the component key.
    pub fn store(
        &self,
        base: &QuasiCrystal,
        mode: ProductMode,
        graph: &ComponentGraph,
    ) -> Result<String> {
        let least = graph.least_vertex().display(base);
        let key = sha_hex(&format!("{}|{}|{}", base.label(), mode, least));
        write_atomic(
            &self.dir,
            &self.component_path(&key),
            &graphs::export_json(base, graph),
        )?;
        let mut index = self.read_index(base, mode);
        for vertex in graph.vertices() {
            index.insert(vertex.word.display(base), key.clone());
        }
        let mut text = serde_json::to_string_pretty(&index)?;
        text.push('\n');
        write_atomic(&self.dir, &self.index_path(base, mode), &text)?;
        Ok(key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::DEFAULT_VERTEX_CAP;

    #[test]
    fn pair_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let base = QuasiCrystal::standard_a(3).unwrap();
        let u = Word::parse(&base, "112").unwrap();
        let v = Word::parse(&base, "121").unwrap();
        let key = pair_key(&base, ProductMode::Tensor, &u, &v);
        // key is symmetric in the pair
        assert_eq!(key, pair_key(&base, ProductMode::Tensor, &v, &u));

        let mut cache = PairCache::open(dir.path()).unwrap();
        assert_eq!(cache.get(&key), None);
        cache.put(&key, true).unwrap();
        assert_eq!(cache.get(&key), Some(true));

        // a fresh handle reads the persisted entry
        let mut reopened = PairCache::open(dir.path()).unwrap();
        assert_eq!(reopened.get(&key), Some(true));

        // an off cache still memoizes in process
        let mut off = PairCache::off();
        assert_eq!(off.get(&key), None);
        off.put(&key, false).unwrap();
        assert_eq!(off.get(&key), Some(false));
    }

    #[test]
    fn component_cache_hits_any_vertex_of_a_stored_component() {
        let dir = tempfile::tempdir().unwrap();
        let base = QuasiCrystal::standard_a(3).unwrap();
        let cache = ComponentCache::open(dir.path()).unwrap();
        let root = Word::parse(&base, "112").unwrap();
        let g = graphs::component(ProductMode::Tensor, &base, &root, DEFAULT_VERTEX_CAP).unwrap();
        assert!(cache.lookup(&base, ProductMode::Tensor, &root).is_none());
        cache.store(&base, ProductMode::Tensor, &g).unwrap();

        let hit = cache.lookup(&base, ProductMode::Tensor, &root).unwrap();
        assert!(hit.same_fragment(&g));
        // any other vertex of the component resolves to the same entry
        let other = Word::parse(&base, "323").unwrap();
        let hit = cache.lookup(&base, ProductMode::Tensor, &other).unwrap();
        assert!(hit.same_fragment(&g));
        // other modes are separate
        assert!(cache.lookup(&base, ProductMode::QuasiTensor, &root).is_none());
    }
}
