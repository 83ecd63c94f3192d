//! Seed sequences found by exhaustive search, with an optional on-disk cache.
//!
//! Cache format, one record per line after the version header:
//!
//! ```text
//! # continuant-seeds v1
//! 2 4 6 2,1,3,1,1,2
//! 2 4 5 -
//! ```
//!
//! Fields are base, exclusive element bound, exponent, and the elements
//! (`-` records a search that found nothing).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use super::{checked_pow, Scheme};
use crate::census::endpoint_witnesses;
use crate::continuant::PartialQuotients;
use crate::error::{Error, Result};

const HEADER: &str = "# continuant-seeds v1";

type Key = (u64, u64, u32);

/// Thread-safe memo of seed searches, optionally persisted to a text file.
#[derive(Debug, Default)]
pub struct SeedCache {
    path: Option<PathBuf>,
    entries: Mutex<BTreeMap<Key, Option<PartialQuotients>>>,
}

impl SeedCache {
    pub fn in_memory() -> Self {
        SeedCache::default()
    }

    /// Loads `path` if it exists; new results are written back to it.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = BTreeMap::new();
        if path.exists() {
            let text = fs::read_to_string(&path)?;
            entries = parse(&text)?;
        }
        Ok(SeedCache { path: Some(path), entries: Mutex::new(entries) })
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("seed cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Seed for `a^m` under `scheme`, searching on a miss. `Ok(None)` means
    /// no admissible sequence exists.
    pub fn lookup(&self, scheme: &Scheme, m: u32) -> Result<Option<PartialQuotients>> {
        let key = (scheme.a(), scheme.bound(), m);
        let mut entries = self.entries.lock().expect("seed cache poisoned");
        if let Some(hit) = entries.get(&key) {
            return Ok(hit.clone());
        }
        let found = search(scheme, m)?;
        entries.insert(key, found.clone());
        if let Some(path) = &self.path {
            store(path, &entries)?;
        }
        Ok(found)
    }
}

/// Lexicographically largest sequence with continuant `a^m`, elements below
/// the bound, and both ends in the scheme's endpoint range.
fn search(scheme: &Scheme, m: u32) -> Result<Option<PartialQuotients>> {
    let d = checked_pow(scheme.a(), m).ok_or_else(|| Error::TargetTooLarge(format!("{}^{m}", scheme.a())))?;
    let (lo, hi) = scheme.endpoint_range();
    Ok(endpoint_witnesses(d, scheme.bound(), lo, hi).pop())
}

fn parse(text: &str) -> Result<BTreeMap<Key, Option<PartialQuotients>>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == HEADER => {}
        other => return Err(Error::SeedCache(format!("expected header {HEADER:?}, found {:?}", other.unwrap_or("")))),
    }
    let mut out = BTreeMap::new();
    for (i, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::SeedCache(format!("line {}: malformed record {line:?}", i + 2));
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [a, bound, m, elems] = fields[..] else {
            return Err(bad());
        };
        let key = (a.parse().map_err(|_| bad())?, bound.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?);
        let value = if elems == "-" {
            None
        } else {
            let v: Vec<u64> =
                elems.split(',').map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
            Some(PartialQuotients::new(v).map_err(|_| bad())?)
        };
        out.insert(key, value);
    }
    Ok(out)
}

fn store(path: &Path, entries: &BTreeMap<Key, Option<PartialQuotients>>) -> Result<()> {
    let mut text = String::from(HEADER);
    text.push('\n');
    for ((a, bound, m), v) in entries {
        let elems = match v {
            Some(u) => u.as_slice().iter().map(u64::to_string).collect::<Vec<_>>().join(","),
            None => "-".into(),
        };
        text.push_str(&format!("{a} {bound} {m} {elems}\n"));
    }
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Seed for a single exponent; absence is a [`Error::SeedNotFound`].
pub fn seed_sequence(scheme: &Scheme, m: u32, cache: &SeedCache) -> Result<PartialQuotients> {
    cache.lookup(scheme, m)?.ok_or(Error::SeedNotFound { a: scheme.a(), bound: scheme.bound(), m })
}

/// Seeds for every exponent in the scheme's window.
pub fn seed_sequences(scheme: &Scheme, cache: &SeedCache) -> Result<BTreeMap<u32, PartialQuotients>> {
    let (lo, hi) = scheme.window();
    (lo..=hi).map(|m| Ok((m, seed_sequence(scheme, m, cache)?))).collect()
}
