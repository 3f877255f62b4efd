//! Persistent memo cache for generator actions.
//!
//! The cache is a single JSON file mapping a SHA-256 content hash of
//! `(e, κ, d, λ, generator, tableau)` to the computed cell vector. Entries
//! are re-hashed on load and silently dropped if the hash does not match, so
//! a damaged or stale file can only cost time, never change a result. The
//! file may be deleted at any moment.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path as FsPath, PathBuf};

use anyhow::{Context, Result};
use blobalg::cellmod::ModuleStore;
use blobalg::combinatorics::{AlgebraConfig, Bipartition, Tableau};
use blobalg::rewrite::{CellVector, MemoEntry, MemoKind};
use exactla::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct StoredEntry {
    e: i64,
    kappa: (i64, i64),
    d: usize,
    lambda: String,
    kind: String,
    index: usize,
    tableau: String,
    /// `(tableau steps, rational coefficient)` pairs.
    value: Vec<(String, String)>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    schema: u32,
    entries: BTreeMap<String, StoredEntry>,
}

/// An in-memory view of a cache file.
#[derive(Debug)]
pub struct MemoCache {
    path: PathBuf,
    file: CacheFile,
    dirty: bool,
}

fn steps_string(t: &Tableau) -> String {
    t.steps().iter().map(|s| char::from(b'0' + s)).collect()
}

fn parse_steps(s: &str) -> Option<Tableau> {
    let steps: Option<Vec<u8>> = s.chars().map(|c| c.to_digit(10).map(|x| x as u8)).collect();
    Tableau::from_steps(&steps?).ok()
}

fn kind_name(k: MemoKind) -> &'static str {
    match k {
        MemoKind::Dot => "y",
        MemoKind::Crossing => "psi",
    }
}

/// Content hash identifying one memoised action.
pub fn entry_key(cfg: &AlgebraConfig, shape: &Bipartition, kind: MemoKind, index: usize, t: &Tableau) -> String {
    let (k1, k2) = cfg.kappa();
    let text = format!(
        "e={};kappa={},{};d={};lambda={};gen={}{};tableau={}",
        cfg.e(),
        k1,
        k2,
        cfg.d(),
        shape,
        kind_name(kind),
        index,
        steps_string(t)
    );
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl StoredEntry {
    fn decode(&self) -> Option<(AlgebraConfig, Bipartition, MemoEntry)> {
        let cfg = AlgebraConfig::new(self.d, self.e, self.kappa).ok()?;
        let shape: Bipartition = self.lambda.parse().ok()?;
        let kind = match self.kind.as_str() {
            "y" => MemoKind::Dot,
            "psi" => MemoKind::Crossing,
            _ => return None,
        };
        let tableau = parse_steps(&self.tableau)?;
        let mut value = CellVector::zero();
        for (steps, coeff) in &self.value {
            let c: BigRational = coeff.parse().ok()?;
            value.add_term(parse_steps(steps)?, &c);
        }
        Some((cfg, shape, MemoEntry { kind, index: self.index, tableau, value }))
    }
}

impl MemoCache {
    /// Opens the cache at `path`; a missing file gives an empty cache.
    pub fn open(path: &FsPath) -> Result<Self> {
        let file = if path.exists() {
            let text = fs::read_to_string(path).with_context(|| format!("reading cache {}", path.display()))?;
            match serde_json::from_str::<CacheFile>(&text) {
                Ok(f) if f.schema == CACHE_SCHEMA => f,
                // An unreadable cache is treated as empty and rewritten.
                _ => CacheFile { schema: CACHE_SCHEMA, entries: BTreeMap::new() },
            }
        } else {
            CacheFile { schema: CACHE_SCHEMA, entries: BTreeMap::new() }
        };
        Ok(MemoCache { path: path.to_path_buf(), file, dirty: false })
    }

    pub fn len(&self) -> usize {
        self.file.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.file.entries.is_empty()
    }

    /// Seeds every engine of `store` for which the cache holds entries.
    /// Returns the number of entries loaded.
    pub fn seed(&self, store: &mut ModuleStore) -> Result<usize> {
        let cfg = *store.config();
        let mut by_shape: BTreeMap<Bipartition, Vec<MemoEntry>> = BTreeMap::new();
        for (key, stored) in &self.file.entries {
            let Some((c, shape, m)) = stored.decode() else { continue };
            if c != cfg || entry_key(&c, &shape, m.kind, m.index, &m.tableau) != *key {
                continue;
            }
            by_shape.entry(shape).or_default().push(m);
        }
        let mut n = 0;
        for (shape, entries) in by_shape {
            n += store.engine(shape)?.seed_memo(entries);
        }
        Ok(n)
    }

    /// Records every memoised action of `store`.
    pub fn absorb(&mut self, store: &ModuleStore) {
        let cfg = *store.config();
        for (shape, engine) in store.engines() {
            for m in engine.memo_entries() {
                let key = entry_key(&cfg, shape, m.kind, m.index, &m.tableau);
                if self.file.entries.contains_key(&key) {
                    continue;
                }
                let value = m.value.iter().map(|(t, c)| (steps_string(t), c.to_string())).collect();
                self.file.entries.insert(
                    key,
                    StoredEntry {
                        e: cfg.e(),
                        kappa: cfg.kappa(),
                        d: cfg.d(),
                        lambda: shape.to_string(),
                        kind: kind_name(m.kind).to_string(),
                        index: m.index,
                        tableau: steps_string(&m.tableau),
                        value,
                    },
                );
                self.dirty = true;
            }
        }
    }

    /// Writes the cache back if anything was added.
    pub fn save(&mut self) -> Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let text = serde_json::to_string(&self.file)?;
        fs::write(&self.path, text).with_context(|| format!("writing cache {}", self.path.display()))?;
        self.dirty = false;
        Ok(())
    }
}
