use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::mosaic::Mosaic;
use crate::tile::{Edge, TileKind};
use crate::trace;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EnumFilter {
    pub require_knot: bool,
    pub min_crossings: usize,
    /// Prunes during the search.
    pub max_crossings: Option<usize>,
}

impl EnumFilter {
    pub fn knots() -> Self {
        EnumFilter { require_knot: true, ..EnumFilter::default() }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EnumOptions {
    /// Tiles fixed per work unit; defaults to `2n`.
    pub prefix_len: Option<usize>,
    /// Shuffles the order in which work units are scheduled; never results.
    pub seed: Option<u64>,
    /// Spread work units over the rayon pool. Ignored without the `parallel`
    /// feature.
    pub parallel: bool,
    /// Units not started by this instant are skipped and counted.
    pub deadline: Option<Instant>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumStats {
    /// Partial boards visited, prefixes included.
    pub nodes: u64,
    /// Suitably connected complete boards reached.
    pub complete: u64,
    /// Boards passing the filter.
    pub yielded: u64,
    pub prefixes: u64,
    /// Work units dropped by the deadline; nonzero means the run is partial.
    pub skipped: u64,
}

impl EnumStats {
    pub fn merge(self, o: EnumStats) -> EnumStats {
        EnumStats {
            nodes: self.nodes + o.nodes,
            complete: self.complete + o.complete,
            yielded: self.yielded + o.yielded,
            prefixes: self.prefixes + o.prefixes,
            skipped: self.skipped + o.skipped,
        }
    }
}

/// Scanline search over an `n`-board: row 1 first, columns left to right.
/// A tile is placed only if its S and W edges agree with the tiles already
/// placed below and to its left and it touches no board edge.
#[derive(Clone, Debug)]
pub struct Enumerator {
    n: usize,
    filter: EnumFilter,
    /// Candidates indexed by `[south occupied][west occupied][last column][last row]`.
    candidates: [[[[Vec<TileKind>; 2]; 2]; 2]; 2],
}

impl Enumerator {
    pub fn new(n: usize, filter: EnumFilter) -> Self {
        assert!(n >= 1, "empty board");
        let mut candidates: [[[[Vec<TileKind>; 2]; 2]; 2]; 2] = Default::default();
        for (s, by_s) in candidates.iter_mut().enumerate() {
            for (w, by_w) in by_s.iter_mut().enumerate() {
                for (last_col, by_c) in by_w.iter_mut().enumerate() {
                    for (last_row, list) in by_c.iter_mut().enumerate() {
                        *list = TileKind::MOSAIC
                            .into_iter()
                            .filter(|k| {
                                let o = k.occupancy();
                                o.contains(Edge::S) == (s == 1)
                                    && o.contains(Edge::W) == (w == 1)
                                    && !(last_col == 1 && o.contains(Edge::E))
                                    && !(last_row == 1 && o.contains(Edge::N))
                            })
                            .collect();
                    }
                }
            }
        }
        Enumerator { n, filter, candidates }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn options_at(&self, tiles: &[TileKind], k: usize) -> &[TileKind] {
        let n = self.n;
        let (row, col) = (k / n, k % n);
        let s = row > 0 && tiles[k - n].occupancy().contains(Edge::N);
        let w = col > 0 && tiles[k - 1].occupancy().contains(Edge::E);
        &self.candidates[s as usize][w as usize][(col == n - 1) as usize][(row == n - 1) as usize]
    }

    /// All partial boards of `len` tiles that can still be extended.
    pub fn prefixes(&self, len: usize) -> Vec<Vec<TileKind>> {
        let len = len.min(self.n * self.n);
        let mut out = Vec::new();
        let mut tiles = Vec::with_capacity(len);
        self.collect_prefixes(&mut tiles, len, 0, &mut out);
        out
    }

    fn collect_prefixes(&self, tiles: &mut Vec<TileKind>, len: usize, crossings: usize, out: &mut Vec<Vec<TileKind>>) {
        if tiles.len() == len {
            out.push(tiles.clone());
            return;
        }
        let k = tiles.len();
        for &kind in self.options_at(tiles, k) {
            let c = crossings + kind.is_crossing() as usize;
            if self.filter.max_crossings.is_some_and(|m| c > m) {
                continue;
            }
            tiles.push(kind);
            self.collect_prefixes(tiles, len, c, out);
            tiles.pop();
        }
    }

    /// Visits every completion of `prefix` that passes the filter.
    pub fn complete(&self, prefix: &[TileKind], visit: &mut dyn FnMut(&Mosaic)) -> EnumStats {
        let mut tiles = vec![TileKind::I; self.n * self.n];
        tiles[..prefix.len()].copy_from_slice(prefix);
        let crossings = prefix.iter().filter(|k| k.is_crossing()).count();
        let mut stats = EnumStats { prefixes: 1, ..EnumStats::default() };
        self.extend(&mut tiles, prefix.len(), crossings, &mut stats, visit);
        stats
    }

    fn extend(
        &self,
        tiles: &mut Vec<TileKind>,
        k: usize,
        crossings: usize,
        stats: &mut EnumStats,
        visit: &mut dyn FnMut(&Mosaic),
    ) {
        stats.nodes += 1;
        if k == tiles.len() {
            stats.complete += 1;
            if crossings < self.filter.min_crossings {
                return;
            }
            let m = Mosaic::from_tiles(self.n, tiles.clone());
            if self.filter.require_knot && trace::component_count(&m) != 1 {
                return;
            }
            stats.yielded += 1;
            visit(&m);
            return;
        }
        for &kind in self.options_at(tiles, k) {
            let c = crossings + kind.is_crossing() as usize;
            if self.filter.max_crossings.is_some_and(|m| c > m) {
                continue;
            }
            tiles[k] = kind;
            self.extend(tiles, k + 1, c, stats, visit);
        }
        tiles[k] = TileKind::I;
    }
}

/// Work units for `n` under `opts`, in scheduling order.
pub fn prefixes(e: &Enumerator, opts: &EnumOptions) -> Vec<Vec<TileKind>> {
    let mut units = e.prefixes(opts.prefix_len.unwrap_or(2 * e.n()));
    if let Some(seed) = opts.seed {
        units.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
    }
    units
}

/// Calls `visit` once for every suitably connected `n`-mosaic passing
/// `filter`, from any thread when running in parallel.
pub fn enumerate_mosaics(
    n: usize,
    filter: &EnumFilter,
    opts: &EnumOptions,
    visit: &(dyn Fn(&Mosaic) + Sync),
) -> EnumStats {
    let e = Enumerator::new(n, filter.clone());
    let units = prefixes(&e, opts);
    let (stats, skipped) = fold_units(&units, opts, |p| e.complete(p, &mut |m| visit(m)), EnumStats::merge);
    let stats = EnumStats { skipped, ..stats };
    let prefix_nodes = prefix_node_count(&e, units.first().map_or(0, Vec::len));
    EnumStats { nodes: stats.nodes + prefix_nodes, ..stats }
}

/// Nodes above the work units, so `nodes` counts the whole search tree.
fn prefix_node_count(e: &Enumerator, len: usize) -> u64 {
    (0..len).map(|l| e.prefixes(l).len() as u64).sum()
}

/// Maps `f` over the units (in parallel if asked) and merges the results.
/// Also returns the number of units skipped by the deadline.
pub(crate) fn fold_units<T, F, M>(units: &[Vec<TileKind>], opts: &EnumOptions, f: F, merge: M) -> (T, u64)
where
    T: Default + Send,
    F: Fn(&[TileKind]) -> T + Sync,
    M: Fn(T, T) -> T + Sync,
{
    let one = |p: &Vec<TileKind>| -> (T, u64) {
        match opts.deadline {
            Some(d) if Instant::now() >= d => (T::default(), 1),
            _ => (f(p), 0),
        }
    };
    let join = |(a, x): (T, u64), (b, y): (T, u64)| (merge(a, b), x + y);
    #[cfg(feature = "parallel")]
    if opts.parallel {
        use rayon::prelude::*;
        return units.par_iter().map(one).reduce(|| (T::default(), 0), join);
    }
    units.iter().map(one).fold((T::default(), 0), join)
}
