//! Tile species, edge sets and strand pairings.
//!
//! Every tile is described by the set of edge midpoints its strands touch and
//! by how those midpoints are paired inside the tile. Orientation table:
//!
//! | kind | occupancy | pairing        |
//! |------|-----------|----------------|
//! | IIa  | S W       | S-W            |
//! | IIb  | S E       | S-E            |
//! | IIc  | N E       | N-E            |
//! | IId  | N W       | N-W            |
//! | IIIa | E W       | E-W            |
//! | IIIb | N S       | N-S            |
//! | IVa  | all       | S-W, N-E       |
//! | IVb  | all       | S-E, N-W       |
//! | Va   | all       | N-S over, E-W  |
//! | Vb   | all       | E-W over, N-S  |

use std::fmt;

use serde::{Deserialize, Serialize};

/// A side of a square tile. The derived order `N < E < S < W` is the
/// order used everywhere a deterministic choice between edges is needed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Edge {
    N,
    E,
    S,
    W,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::N, Edge::E, Edge::S, Edge::W];

    pub fn opposite(self) -> Edge {
        match self {
            Edge::N => Edge::S,
            Edge::E => Edge::W,
            Edge::S => Edge::N,
            Edge::W => Edge::E,
        }
    }

    /// Quarter turn counterclockwise.
    pub fn rotate_ccw(self) -> Edge {
        match self {
            Edge::N => Edge::W,
            Edge::W => Edge::S,
            Edge::S => Edge::E,
            Edge::E => Edge::N,
        }
    }

    /// Reflection across the vertical axis (`x -> -x`).
    pub fn flip(self) -> Edge {
        match self {
            Edge::E => Edge::W,
            Edge::W => Edge::E,
            e => e,
        }
    }

    /// Row/column offset of the neighbouring tile across this edge.
    pub fn delta(self) -> (isize, isize) {
        match self {
            Edge::N => (1, 0),
            Edge::E => (0, 1),
            Edge::S => (-1, 0),
            Edge::W => (0, -1),
        }
    }

    /// Unit direction `(x, y)` pointing out of the tile through this edge.
    pub fn outward(self) -> (i32, i32) {
        match self {
            Edge::N => (0, 1),
            Edge::E => (1, 0),
            Edge::S => (0, -1),
            Edge::W => (-1, 0),
        }
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Edge::N | Edge::S)
    }

    fn bit(self) -> u8 {
        match self {
            Edge::N => 1,
            Edge::E => 2,
            Edge::S => 4,
            Edge::W => 8,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Edge::N => "N",
            Edge::E => "E",
            Edge::S => "S",
            Edge::W => "W",
        };
        f.write_str(s)
    }
}

/// Subset of `{N, E, S, W}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet(u8);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);
    pub const ALL: EdgeSet = EdgeSet(0b1111);

    pub fn from_edges(edges: &[Edge]) -> EdgeSet {
        edges.iter().fold(EdgeSet::EMPTY, |acc, &e| acc.with(e))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, e: Edge) -> bool {
        self.0 & e.bit() != 0
    }

    pub fn with(self, e: Edge) -> EdgeSet {
        EdgeSet(self.0 | e.bit())
    }

    pub fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    /// Union of two sets, or `None` when they overlap.
    pub fn disjoint_union(self, other: EdgeSet) -> Option<EdgeSet> {
        (self.0 & other.0 == 0).then_some(EdgeSet(self.0 | other.0))
    }

    pub fn complement(self) -> EdgeSet {
        EdgeSet(!self.0 & 0b1111)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in `N < E < S < W` order.
    pub fn iter(self) -> impl Iterator<Item = Edge> {
        Edge::ALL.into_iter().filter(move |&e| self.contains(e))
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// One of the twelve tile species. `T0` only ever appears in duals; the
/// crossings `Va`/`Vb` only ever appear in mosaics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileKind {
    T0,
    I,
    IIa,
    IIb,
    IIc,
    IId,
    IIIa,
    IIIb,
    IVa,
    IVb,
    Va,
    Vb,
}

/// Rank of each kind in the serialized token order (`2a < ... < 5b < _`,
/// with the dual-only `0` first). Index by `TileKind as usize`.
const SERIAL_RANK: [u8; 12] = [0, 11, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

impl TileKind {
    pub const ALL: [TileKind; 12] = [
        TileKind::T0,
        TileKind::I,
        TileKind::IIa,
        TileKind::IIb,
        TileKind::IIc,
        TileKind::IId,
        TileKind::IIIa,
        TileKind::IIIb,
        TileKind::IVa,
        TileKind::IVb,
        TileKind::Va,
        TileKind::Vb,
    ];

    /// The eleven species allowed in a mosaic.
    pub const MOSAIC: [TileKind; 11] = [
        TileKind::I,
        TileKind::IIa,
        TileKind::IIb,
        TileKind::IIc,
        TileKind::IId,
        TileKind::IIIa,
        TileKind::IIIb,
        TileKind::IVa,
        TileKind::IVb,
        TileKind::Va,
        TileKind::Vb,
    ];

    pub fn occupancy(self) -> EdgeSet {
        use Edge::*;
        match self {
            TileKind::T0 | TileKind::I => EdgeSet::EMPTY,
            TileKind::IIa => EdgeSet::from_edges(&[S, W]),
            TileKind::IIb => EdgeSet::from_edges(&[S, E]),
            TileKind::IIc => EdgeSet::from_edges(&[N, E]),
            TileKind::IId => EdgeSet::from_edges(&[N, W]),
            TileKind::IIIa => EdgeSet::from_edges(&[E, W]),
            TileKind::IIIb => EdgeSet::from_edges(&[N, S]),
            TileKind::IVa | TileKind::IVb | TileKind::Va | TileKind::Vb => EdgeSet::ALL,
        }
    }

    /// Strands inside the tile as unordered edge pairs, each written with the
    /// lesser edge first. Crossings list the over strand first.
    pub fn arcs(self) -> &'static [(Edge, Edge)] {
        use Edge::*;
        match self {
            TileKind::T0 | TileKind::I => &[],
            TileKind::IIa => &[(S, W)],
            TileKind::IIb => &[(E, S)],
            TileKind::IIc => &[(N, E)],
            TileKind::IId => &[(N, W)],
            TileKind::IIIa => &[(E, W)],
            TileKind::IIIb => &[(N, S)],
            TileKind::IVa => &[(S, W), (N, E)],
            TileKind::IVb => &[(E, S), (N, W)],
            TileKind::Va => &[(N, S), (E, W)],
            TileKind::Vb => &[(E, W), (N, S)],
        }
    }

    /// The edge joined to `e` inside this tile.
    pub fn partner(self, e: Edge) -> Option<Edge> {
        self.arcs().iter().find_map(|&(a, b)| {
            if a == e {
                Some(b)
            } else if b == e {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, TileKind::Va | TileKind::Vb)
    }

    pub fn is_double_arc(self) -> bool {
        matches!(self, TileKind::IVa | TileKind::IVb)
    }

    pub fn is_single_arc(self) -> bool {
        matches!(self, TileKind::IIa | TileKind::IIb | TileKind::IIc | TileKind::IId)
    }

    pub fn is_line(self) -> bool {
        matches!(self, TileKind::IIIa | TileKind::IIIb)
    }

    pub fn is_mosaic_legal(self) -> bool {
        self != TileKind::T0
    }

    pub fn is_dual_legal(self) -> bool {
        !self.is_crossing()
    }

    /// Whether the N-S strand of a crossing passes over.
    pub fn vertical_over(self) -> Option<bool> {
        match self {
            TileKind::Va => Some(true),
            TileKind::Vb => Some(false),
            _ => None,
        }
    }

    /// Crossing whose over strand is vertical (`true`) or horizontal.
    pub fn crossing(vertical_over: bool) -> TileKind {
        if vertical_over {
            TileKind::Va
        } else {
            TileKind::Vb
        }
    }

    /// The non-crossing kind with exactly these strands, if one exists.
    /// Two straight strands are ambiguous (over/under) and yield `None`.
    pub fn from_arcs(arcs: &[(Edge, Edge)]) -> Option<TileKind> {
        let norm = |(a, b): (Edge, Edge)| if a <= b { (a, b) } else { (b, a) };
        let mut want: Vec<(Edge, Edge)> = arcs.iter().copied().map(norm).collect();
        want.sort();
        [
            TileKind::I,
            TileKind::IIa,
            TileKind::IIb,
            TileKind::IIc,
            TileKind::IId,
            TileKind::IIIa,
            TileKind::IIIb,
            TileKind::IVa,
            TileKind::IVb,
        ]
        .into_iter()
        .find(|k| {
            let mut have: Vec<(Edge, Edge)> = k.arcs().to_vec();
            have.sort();
            have == want
        })
    }

    /// Tile-wise dual substitution: V -> I, IV -> 0, IIIa <-> IIIb,
    /// IIa <-> IIc, IIb <-> IId, I -> IV (orientation chosen by the caller).
    /// `T0` maps back to a double arc, which keeps the map an involution on
    /// occupancy.
    pub fn dual_kind(self, blank_to: TileKind) -> TileKind {
        match self {
            TileKind::Va | TileKind::Vb => TileKind::I,
            TileKind::IVa | TileKind::IVb => TileKind::T0,
            TileKind::IIIa => TileKind::IIIb,
            TileKind::IIIb => TileKind::IIIa,
            TileKind::IIa => TileKind::IIc,
            TileKind::IIc => TileKind::IIa,
            TileKind::IIb => TileKind::IId,
            TileKind::IId => TileKind::IIb,
            TileKind::I | TileKind::T0 => blank_to,
        }
    }

    /// `.kmo`/`.kmd` token.
    pub fn token(self) -> &'static str {
        match self {
            TileKind::T0 => "0",
            TileKind::I => "_",
            TileKind::IIa => "2a",
            TileKind::IIb => "2b",
            TileKind::IIc => "2c",
            TileKind::IId => "2d",
            TileKind::IIIa => "3a",
            TileKind::IIIb => "3b",
            TileKind::IVa => "4a",
            TileKind::IVb => "4b",
            TileKind::Va => "5a",
            TileKind::Vb => "5b",
        }
    }

    pub fn from_token(tok: &str) -> Option<TileKind> {
        TileKind::ALL.into_iter().find(|k| k.token() == tok)
    }

    /// Position of the token in byte-lexicographic order.
    pub fn serial_rank(self) -> u8 {
        SERIAL_RANK[self as usize]
    }
}

impl fmt::Display for TileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn occupancy_table() {
        assert!(TileKind::I.occupancy().is_empty());
        assert_eq!(TileKind::Va.occupancy(), EdgeSet::ALL);
        assert_eq!(TileKind::IIa.occupancy(), EdgeSet::from_edges(&[Edge::S, Edge::W]));
        assert_eq!(TileKind::IIIb.occupancy(), EdgeSet::from_edges(&[Edge::N, Edge::S]));
    }

    #[test]
    fn arcs_cover_occupancy_once() {
        for k in TileKind::ALL {
            let mut seen = EdgeSet::EMPTY;
            for &(a, b) in k.arcs() {
                assert!(a < b, "{k:?} arc not normalised");
                seen = seen.disjoint_union(EdgeSet::from_edges(&[a, b])).unwrap();
            }
            assert_eq!(seen, k.occupancy(), "{k:?}");
        }
    }

    #[test]
    fn single_arcs_use_adjacent_edges() {
        for k in [TileKind::IIa, TileKind::IIb, TileKind::IIc, TileKind::IId] {
            let (a, b) = k.arcs()[0];
            assert_ne!(a.opposite(), b);
        }
    }

    #[test]
    fn crossing_pairings_go_straight() {
        for k in [TileKind::Va, TileKind::Vb] {
            for e in Edge::ALL {
                assert_eq!(k.partner(e), Some(e.opposite()));
            }
        }
        assert_eq!(TileKind::IVa.partner(Edge::S), Some(Edge::W));
        assert_eq!(TileKind::IVb.partner(Edge::S), Some(Edge::E));
    }

    #[test]
    fn tokens_round_trip() {
        for k in TileKind::ALL {
            assert_eq!(TileKind::from_token(k.token()), Some(k));
        }
        assert_eq!(TileKind::from_token("6a"), None);
    }

    #[test]
    fn serial_rank_matches_token_bytes() {
        let mut kinds = TileKind::ALL.to_vec();
        kinds.sort_by_key(|k| k.token().as_bytes().to_vec());
        let ranks: Vec<u8> = kinds.iter().map(|k| k.serial_rank()).collect();
        assert_eq!(ranks, (0..12).collect::<Vec<u8>>());
    }

    #[test]
    fn from_arcs_recovers_non_crossings() {
        for k in TileKind::ALL.into_iter().filter(|k| !k.is_crossing() && *k != TileKind::T0) {
            assert_eq!(TileKind::from_arcs(k.arcs()), Some(k));
        }
        assert_eq!(TileKind::from_arcs(TileKind::Va.arcs()), None);
    }

    #[test]
    fn edge_set_disjoint_union() {
        let a = EdgeSet::from_edges(&[Edge::N]);
        let b = EdgeSet::from_edges(&[Edge::N, Edge::E]);
        assert_eq!(a.disjoint_union(b), None);
        assert_eq!(a.disjoint_union(b.complement()), Some(EdgeSet::from_edges(&[Edge::N, Edge::S, Edge::W])));
    }
}
