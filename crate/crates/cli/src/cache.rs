//! Persistent subgroup-lattice cache: versioned JSON keyed by a fingerprint
//! of the group's degree and generator images. Entries that fail to parse
//! or validate are silently ignored and recomputed; `store` failures only
//! warn (stdout must stay byte-identical whether or not the cache works).

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use ambicard_core::group::{PermGroup, SubgroupLattice};
use ambicard_core::Rat;

pub struct CacheConfig {
    pub dir: PathBuf,
    pub enabled: bool,
}

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    version: String,
    degree: usize,
    generators: Vec<Vec<u16>>,
    subgroups: Vec<Vec<u16>>,
    marks: Vec<Vec<i64>>,
    /// Möbius values aligned with the subgroup poset's comparable pairs
    /// (always integers on a finite poset).
    mobius: Vec<i64>,
}

fn fingerprint(group: &PermGroup) -> String {
    let mut hasher = Sha256::new();
    hasher.update(VERSION.as_bytes());
    hasher.update((group.degree() as u64).to_le_bytes());
    for g in group.generators() {
        hasher.update(b"/");
        for &i in g.images() {
            hasher.update(i.to_le_bytes());
        }
    }
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn entry_path(config: &CacheConfig, group: &PermGroup) -> PathBuf {
    config.dir.join(format!("{}.json", fingerprint(group)))
}

/// Try to rebuild the lattice from a cached entry; any mismatch falls back
/// to recomputation.
pub fn load(config: &CacheConfig, group: &PermGroup) -> Option<SubgroupLattice> {
    if !config.enabled {
        return None;
    }
    let text = std::fs::read_to_string(entry_path(config, group)).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    let generators: Vec<Vec<u16>> = group
        .generators()
        .iter()
        .map(|g| g.images().to_vec())
        .collect();
    if entry.version != VERSION || entry.degree != group.degree() || entry.generators != generators
    {
        return None;
    }
    let lattice = SubgroupLattice::from_cached_subgroups(group, &entry.subgroups).ok()?;
    lattice.install_marks(entry.marks).ok()?;
    let values: Vec<Rat> = entry
        .mobius
        .into_iter()
        .map(|v| Rat::from_integer(v.into()))
        .collect();
    lattice.install_mobius(values).ok()?;
    Some(lattice)
}

/// Persist a fully computed lattice (subgroups, marks, Möbius).
pub fn store(config: &CacheConfig, lattice: &SubgroupLattice) {
    if !config.enabled {
        return;
    }
    let group = lattice.group();
    let mobius: Option<Vec<i64>> = lattice
        .mobius_table()
        .iter()
        .map(|r| {
            let (num, den) = ambicard_core::rational::to_i64_pair(r)?;
            (den == 1).then_some(num)
        })
        .collect();
    let Some(mobius) = mobius else {
        return;
    };
    let table = ambicard_core::burnside::TableOfMarks::new(lattice);
    let entry = CacheEntry {
        version: VERSION.to_string(),
        degree: group.degree(),
        generators: group
            .generators()
            .iter()
            .map(|g| g.images().to_vec())
            .collect(),
        subgroups: lattice
            .subgroups()
            .iter()
            .map(|s| s.element_indices())
            .collect(),
        marks: (0..table.class_count())
            .map(|h| table.row(h).to_vec())
            .collect(),
        mobius,
    };
    let write = || -> std::io::Result<()> {
        std::fs::create_dir_all(&config.dir)?;
        let payload = serde_json::to_string(&entry).expect("cache entry serializes");
        std::fs::write(entry_path(config, group), payload)
    };
    if let Err(e) = write() {
        eprintln!("warning: could not write lattice cache: {e}");
    }
}
