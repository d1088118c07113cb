use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::canonical::Canonicalizer;
use super::enumerate::{fold_units, prefixes, EnumFilter, EnumOptions, EnumStats, Enumerator};
use crate::mosaic::Mosaic;
use crate::poly::{self, LaurentPoly};
use crate::tile::TileKind;
use crate::trace;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("checkpoint {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("checkpoint {}: {source}", path.display())]
    Corrupt { path: PathBuf, source: serde_json::Error },
    #[error("checkpoint {} belongs to a different run", path.display())]
    Mismatch { path: PathBuf },
}

/// One Jones class of canonical knot boards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub jones: LaurentPoly,
    /// Canonical classes with this polynomial.
    pub count: u64,
    /// Least serialization among those classes.
    #[serde(with = "kmo")]
    pub representative: Mosaic,
    pub crossings_min: usize,
    pub crossings_max: usize,
}

impl CensusEntry {
    fn single(jones: LaurentPoly, m: Mosaic) -> Self {
        let c = m.crossing_count();
        CensusEntry { jones, count: 1, representative: m, crossings_min: c, crossings_max: c }
    }

    fn absorb(&mut self, o: CensusEntry) {
        self.count += o.count;
        self.crossings_min = self.crossings_min.min(o.crossings_min);
        self.crossings_max = self.crossings_max.max(o.crossings_max);
        if o.representative.serialize() < self.representative.serialize() {
            self.representative = o.representative;
        }
    }

    /// The streaming form: the polynomial as text, the board as `.kmo`.
    pub fn to_json_line(&self) -> serde_json::Value {
        serde_json::json!({
            "jones": self.jones.to_string(),
            "count": self.count,
            "representative": self.representative.serialize(),
            "crossings_min": self.crossings_min,
            "crossings_max": self.crossings_max,
        })
    }
}

mod kmo {
    use super::Mosaic;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Mosaic, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&m.serialize())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Mosaic, D::Error> {
        let text = String::deserialize(d)?;
        Mosaic::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Knot boards of one size grouped by Jones polynomial. Merging is
/// associative and commutative, so partial censuses from any partition of the
/// search combine to the same result.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub merge_mirrors: bool,
    /// Keyed by the polynomial's text.
    entries: BTreeMap<String, CensusEntry>,
    pub stats: EnumStats,
}

impl Census {
    pub fn empty(n: usize, merge_mirrors: bool) -> Self {
        Census { n, merge_mirrors, ..Census::default() }
    }

    /// Entries ordered by the text of their polynomial.
    pub fn entries(&self) -> impl Iterator<Item = &CensusEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, jones: &LaurentPoly) -> Option<&CensusEntry> {
        self.entries.get(&jones.to_string())
    }

    /// Canonical knot classes counted.
    pub fn classes(&self) -> u64 {
        self.entries.values().map(|e| e.count).sum()
    }

    pub fn insert(&mut self, e: CensusEntry) {
        match self.entries.get_mut(&e.jones.to_string()) {
            Some(cur) => cur.absorb(e),
            None => {
                self.entries.insert(e.jones.to_string(), e);
            }
        }
    }

    pub fn merge(mut self, o: Census) -> Census {
        // an empty default carries no board size
        self.n = self.n.max(o.n);
        self.merge_mirrors |= o.merge_mirrors;
        self.stats = self.stats.merge(o.stats);
        for e in o.entries.into_values() {
            self.insert(e);
        }
        self
    }

    /// Whether the deadline cut the run short.
    pub fn is_partial(&self) -> bool {
        self.stats.skipped > 0
    }
}

/// Jones key of a knot board; with mirrors merged, the lesser text of the
/// polynomial and its mirror.
fn key(m: &Mosaic, merge_mirrors: bool) -> LaurentPoly {
    let v = poly::jones(m).expect("enumerated boards are valid knots");
    if merge_mirrors {
        let w = v.invert();
        if w.to_string() < v.to_string() {
            return w;
        }
    }
    v
}

struct Worker {
    enumerator: Enumerator,
    canon: Canonicalizer,
    merge_mirrors: bool,
}

impl Worker {
    fn new(n: usize, merge_mirrors: bool) -> Self {
        let filter = EnumFilter::default();
        let canon = if merge_mirrors { Canonicalizer::with_mirrors(n) } else { Canonicalizer::new(n) };
        Worker { enumerator: Enumerator::new(n, filter), canon, merge_mirrors }
    }

    fn unit(&self, prefix: &[TileKind]) -> Census {
        let mut census = Census::empty(self.enumerator.n(), self.merge_mirrors);
        let stats = self.enumerator.complete(prefix, &mut |m| {
            // canonicity first: it is far cheaper than tracing
            if self.canon.is_canonical(m.tiles()) && trace::component_count(m) == 1 {
                census.insert(CensusEntry::single(key(m, self.merge_mirrors), m.clone()));
            }
        });
        census.stats = stats;
        census
    }
}

/// Groups the canonical knot `n`-boards by Jones polynomial.
pub fn census(n: usize, merge_mirrors: bool, opts: &EnumOptions) -> Census {
    let w = Worker::new(n, merge_mirrors);
    let units = prefixes(&w.enumerator, opts);
    let (c, skipped) = fold_units(&units, opts, |p| w.unit(p), Census::merge);
    let mut c = Census { n, merge_mirrors, ..c };
    c.stats.skipped += skipped;
    c
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    prefix: String,
    census: Census,
}

fn prefix_name(prefix: &[TileKind]) -> String {
    let body: Vec<&str> = prefix.iter().map(|k| k.token()).collect();
    format!("p-{}", body.join(""))
}

fn load(path: &Path, name: &str, n: usize, merge_mirrors: bool) -> Result<Option<Census>, CensusError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(source) => return Err(CensusError::Io { path: path.into(), source }),
    };
    let cp: Checkpoint =
        serde_json::from_str(&text).map_err(|source| CensusError::Corrupt { path: path.into(), source })?;
    if cp.prefix != name || cp.census.n != n || cp.census.merge_mirrors != merge_mirrors {
        return Err(CensusError::Mismatch { path: path.into() });
    }
    Ok(Some(cp.census))
}

fn store(path: &Path, name: &str, c: &Census) -> Result<(), CensusError> {
    let io_err = |source| CensusError::Io { path: path.into(), source };
    let tmp = path.with_extension("tmp");
    let body = serde_json::to_string(&Checkpoint { prefix: name.into(), census: c.clone() })
        .expect("census serializes");
    fs::write(&tmp, body).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

/// As [`census`], keeping one checkpoint file per work unit in `dir`. Units
/// with a checkpoint are loaded instead of searched, so an interrupted run
/// resumes where it stopped. Checkpoints depend on the prefix length, not on
/// the seed or thread count.
pub fn census_resumable(n: usize, merge_mirrors: bool, opts: &EnumOptions, dir: &Path) -> Result<Census, CensusError> {
    let sub = dir.join(format!("n{n}{}", if merge_mirrors { "-merged" } else { "" }));
    fs::create_dir_all(&sub).map_err(|source| CensusError::Io { path: sub.clone(), source })?;
    let w = Worker::new(n, merge_mirrors);
    let units = prefixes(&w.enumerator, opts);
    let run = |p: &[TileKind]| -> Result<Census, CensusError> {
        let name = prefix_name(p);
        let path = sub.join(format!("{name}.json"));
        if let Some(c) = load(&path, &name, n, merge_mirrors)? {
            return Ok(c);
        }
        let c = w.unit(p);
        store(&path, &name, &c)?;
        Ok(c)
    };
    let merge = |a: Result<Census, CensusError>, b: Result<Census, CensusError>| Ok(a?.merge(b?));
    let (c, skipped) = fold_units(&units, opts, |p| ResultCensus(run(p)), |a, b| ResultCensus(merge(a.0, b.0)));
    let mut c = Census { n, merge_mirrors, ..c.0? };
    c.stats.skipped += skipped;
    Ok(c)
}

/// `Default` for the fold identity.
struct ResultCensus(Result<Census, CensusError>);

impl Default for ResultCensus {
    fn default() -> Self {
        ResultCensus(Ok(Census::default()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(parallel: bool) -> EnumOptions {
        EnumOptions { parallel, ..EnumOptions::default() }
    }

    #[test]
    fn small_boards_hold_only_the_unknot() {
        for n in [2, 3] {
            let c = census(n, false, &opts(false));
            assert_eq!(c.len(), 1, "n={n}");
            let e = c.entries().next().unwrap();
            assert_eq!(e.jones, LaurentPoly::one(poly::Var::T));
            assert_eq!(poly::jones(&e.representative).unwrap(), e.jones);
        }
    }

    #[test]
    fn partition_does_not_change_the_result() {
        let a = census(3, false, &opts(false));
        let b = census(3, false, &EnumOptions { prefix_len: Some(2), seed: Some(3), parallel: true, deadline: None });
        assert_eq!(a.entries().collect::<Vec<_>>(), b.entries().collect::<Vec<_>>());
    }

    #[test]
    fn merge_is_commutative() {
        let w = Worker::new(3, false);
        let units = w.enumerator.prefixes(3);
        let parts: Vec<Census> = units.iter().map(|p| w.unit(p)).collect();
        let fwd = parts.iter().cloned().fold(Census::default(), Census::merge);
        let back = parts.iter().rev().cloned().fold(Census::default(), Census::merge);
        assert_eq!(fwd, back);
    }

    #[test]
    fn resumes_from_checkpoints() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path();
        let o = EnumOptions { prefix_len: Some(3), ..opts(false) };
        let first = census_resumable(3, false, &o, dir).unwrap();
        let files: Vec<PathBuf> = fs::read_dir(dir.join("n3")).unwrap().map(|e| e.unwrap().path()).collect();
        assert_eq!(files.len(), Enumerator::new(3, EnumFilter::default()).prefixes(3).len());
        // drop one unit, as if the run had been interrupted before it
        fs::remove_file(&files[0]).unwrap();
        let again = census_resumable(3, false, &o, dir).unwrap();
        assert!(files[0].exists());
        assert_eq!(first, again);
        assert_eq!(first.entries().collect::<Vec<_>>(), census(3, false, &o).entries().collect::<Vec<_>>());
    }

    #[test]
    fn corrupt_checkpoint_is_an_error() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path();
        let o = EnumOptions { prefix_len: Some(3), ..opts(false) };
        census_resumable(3, false, &o, dir).unwrap();
        let victim = fs::read_dir(dir.join("n3")).unwrap().next().unwrap().unwrap().path();
        fs::write(&victim, "{").unwrap();
        assert!(matches!(census_resumable(3, false, &o, dir), Err(CensusError::Corrupt { .. })));
    }
}
