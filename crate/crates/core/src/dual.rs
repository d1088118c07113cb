//! The dual on the interior `S`, the triple `T = (l, l', l'')`, and the
//! decomposition of the dual into loops, edges and type 0 tiles.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{ParseError, Position, TileGrid};
use crate::mosaic::{Mosaic, ValidationReport};
use crate::tile::{Edge, TileKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("mosaic is not suitably connected: {0}")]
    Invalid(ValidationReport),
    #[error("board of size {0} has no interior")]
    TooSmall(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("crossing tile at {0} cannot appear in a dual")]
    Crossing(Position),
}

/// Orientation given to the type IV tiles that replace blank interior tiles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IvPolicy {
    #[default]
    AlwaysA,
    AlwaysB,
    /// `IVa` where `row + col` is even, `IVb` elsewhere.
    Checkerboard,
}

impl IvPolicy {
    fn at(self, p: Position) -> TileKind {
        match self {
            IvPolicy::AlwaysA => TileKind::IVa,
            IvPolicy::AlwaysB => TileKind::IVb,
            IvPolicy::Checkerboard if (p.row + p.col).is_multiple_of(2) => TileKind::IVa,
            IvPolicy::Checkerboard => TileKind::IVb,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairingPolicy {
    #[default]
    AlwaysA,
    AlwaysB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CrossingPolicy {
    /// `Va` where `row + col` is even, `Vb` elsewhere.
    #[default]
    Alternating,
    AllA,
}

/// Dual tiles over `S`, addressed in board coordinates `2..=n-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dual {
    n: usize,
    grid: TileGrid,
}

impl Dual {
    /// All-blank dual of an `n`-board.
    pub fn blank(n: usize) -> Self {
        assert!(n >= 2, "boards smaller than 2 have no dual");
        Dual { n, grid: TileGrid::filled(n - 2, TileKind::I) }
    }

    /// Parses a `.kmd` file; its size line is `n - 2`.
    pub fn parse(text: &str) -> Result<Self, DualError> {
        let grid = TileGrid::parse_with(text, TileKind::is_dual_legal)?;
        Ok(Dual { n: grid.size() + 2, grid })
    }

    pub fn serialize(&self) -> String {
        self.grid.serialize()
    }

    /// Board size of the owning mosaic.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Tiles indexed from `(1,1)` = board position `(2,2)`.
    pub fn grid(&self) -> &TileGrid {
        &self.grid
    }

    pub fn contains(&self, p: Position) -> bool {
        p.row >= 2 && p.col >= 2 && p.row < self.n && p.col < self.n
    }

    fn local(p: Position) -> Position {
        Position::new(p.row - 1, p.col - 1)
    }

    pub fn get(&self, p: Position) -> TileKind {
        self.grid.get(Dual::local(p))
    }

    pub fn set(&mut self, p: Position, kind: TileKind) {
        assert!(kind.is_dual_legal(), "crossing in a dual");
        self.grid.set(Dual::local(p), kind);
    }

    /// Board positions of `S`, row-major from the bottom.
    pub fn positions(&self) -> impl Iterator<Item = Position> {
        self.grid.positions().map(|p| Position::new(p.row + 1, p.col + 1))
    }

    /// Neighbour across `e` inside `S`.
    pub fn step(&self, p: Position, e: Edge) -> Option<Position> {
        p.step(e, self.n).filter(|&q| self.contains(q))
    }
}

/// Serializes as the `.kmd` text.
impl Serialize for Dual {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.serialize())
    }
}

impl fmt::Debug for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

pub fn compute_dual(m: &Mosaic, policy: IvPolicy) -> Result<Dual, DualError> {
    let report = m.validate();
    if !report.is_ok() {
        return Err(DualError::Invalid(report));
    }
    if m.n() < 2 {
        return Err(DualError::TooSmall(m.n()));
    }
    Ok(dual_unchecked(m, policy))
}

pub(crate) fn dual_unchecked(m: &Mosaic, policy: IvPolicy) -> Dual {
    let mut d = Dual::blank(m.n());
    for p in m.interior() {
        d.set(p, m.get(p).dual_kind(policy.at(p)));
    }
    d
}

/// Interior tiles implied by `d`, as an `(n-2) x (n-2)` grid. Occupancy is
/// recovered exactly; IV pairings and crossing types only up to the policies.
pub fn invert_dual(d: &Dual, pairing: PairingPolicy, crossing: CrossingPolicy) -> Result<TileGrid, DualError> {
    let mut out = TileGrid::filled(d.n() - 2, TileKind::I);
    for p in d.positions() {
        let k = match d.get(p) {
            TileKind::Va | TileKind::Vb => return Err(DualError::Crossing(p)),
            TileKind::T0 => match pairing {
                PairingPolicy::AlwaysA => TileKind::IVa,
                PairingPolicy::AlwaysB => TileKind::IVb,
            },
            TileKind::I => match crossing {
                CrossingPolicy::Alternating => TileKind::crossing((p.row + p.col).is_multiple_of(2)),
                CrossingPolicy::AllA => TileKind::Va,
            },
            TileKind::IVa | TileKind::IVb => TileKind::I,
            k => k.dual_kind(TileKind::I),
        };
        out.set(Dual::local(p), k);
    }
    Ok(out)
}

/// `(l, l', l'')`; the derived order is lexicographic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct TripleT {
    pub l: usize,
    pub l_prime: usize,
    pub l_dprime: usize,
}

impl fmt::Display for TripleT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.l_prime, self.l_dprime)
    }
}

pub fn triple(d: &Dual) -> TripleT {
    let mut t = TripleT::default();
    for &k in d.grid.tiles() {
        if k != TileKind::I {
            t.l += 1;
        }
        if k != TileKind::I && k != TileKind::T0 {
            t.l_prime += 1;
        }
        if matches!(k, TileKind::IVa | TileKind::IVb) {
            t.l_dprime += 1;
        }
    }
    t
}

pub fn compare_t(a: TripleT, b: TripleT) -> Ordering {
    a.cmp(&b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Loop,
    XxEdge,
    XyEdge,
    /// Endpoints on opposite sides of `S`.
    Spanning,
    Type0,
}

impl ComponentKind {
    pub fn is_edge(self) -> bool {
        matches!(self, ComponentKind::XxEdge | ComponentKind::XyEdge | ComponentKind::Spanning)
    }
}

/// One arc of the dual: the tile and the two edges it joins, in walk order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DualArc {
    pub at: Position,
    pub entry: Edge,
    pub exit: Edge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualComponent {
    pub kind: ComponentKind,
    /// Walk order; empty for type 0 tiles.
    pub arcs: Vec<DualArc>,
    /// Distinct tiles, row-major.
    pub tiles: Vec<Position>,
    /// Sides of `S` on which an edge ends, in walk order.
    pub endpoints: Vec<Edge>,
    pub bubble: bool,
    pub outermost: bool,
}

/// Quadrants of a tile: NE, NW, SW, SE.
pub(crate) const NE: usize = 0;
pub(crate) const NW: usize = 1;
pub(crate) const SW: usize = 2;
pub(crate) const SE: usize = 3;

/// Quadrants on either side of edge `e`'s midpoint.
fn quadrants_at(e: Edge) -> [usize; 2] {
    match e {
        Edge::N => [NE, NW],
        Edge::W => [NW, SW],
        Edge::S => [SW, SE],
        Edge::E => [SE, NE],
    }
}

/// Components plus the region data moves need.
#[derive(Clone, Debug)]
pub struct DualAnalysis {
    pub components: Vec<DualComponent>,
    /// Owning component of each occupied `(tile, edge)` midpoint.
    owner: HashMap<(Position, Edge), usize>,
    /// Per component: the quadrants on its outside, if it is an edge with one.
    outside: Vec<Option<BTreeSet<(Position, usize)>>>,
}

impl DualAnalysis {
    pub fn owner(&self, p: Position, e: Edge) -> Option<usize> {
        self.owner.get(&(p, e)).copied()
    }

    /// Whether the quadrant `q` of tile `p` lies outside component `c`.
    pub fn quadrant_outside(&self, c: usize, p: Position, q: usize) -> bool {
        self.outside[c].as_ref().is_some_and(|s| s.contains(&(p, q)))
    }

    pub fn outside_region(&self, c: usize) -> Option<&BTreeSet<(Position, usize)>> {
        self.outside[c].as_ref()
    }

    /// Whether component `f` lies in the outside of edge `e`.
    pub fn lies_outside(&self, f: usize, e: usize) -> bool {
        if f == e {
            return false;
        }
        let comp = &self.components[f];
        let probe = match comp.arcs.first() {
            Some(a) => (a.at, quadrants_at(a.entry)[0]),
            None => (comp.tiles[0], NE),
        };
        self.quadrant_outside(e, probe.0, probe.1)
    }

    /// Pairs `(xx, xy)` where the XX-edge lies outside the XY-edge.
    pub fn xx_outside_xy(&self) -> usize {
        let mut count = 0;
        for (x, cx) in self.components.iter().enumerate() {
            if cx.kind != ComponentKind::XyEdge {
                continue;
            }
            for (f, cf) in self.components.iter().enumerate() {
                if cf.kind == ComponentKind::XxEdge && self.lies_outside(f, x) {
                    count += 1;
                }
            }
        }
        count
    }
}

pub fn classify_dual(d: &Dual) -> Vec<DualComponent> {
    analyze_dual(d).components
}

pub fn analyze_dual(d: &Dual) -> DualAnalysis {
    let mut components = Vec::new();
    let mut owner: HashMap<(Position, Edge), usize> = HashMap::new();
    // edges first so every walk starts at an endpoint on the boundary of S
    let mut starts: Vec<(Position, Edge, Edge)> = Vec::new();
    let mut loop_starts: Vec<(Position, Edge, Edge)> = Vec::new();
    for p in d.positions() {
        let mut arcs = d.get(p).arcs().to_vec();
        arcs.sort();
        for (a, b) in arcs {
            for (x, y) in [(a, b), (b, a)] {
                if d.step(p, x).is_none() {
                    starts.push((p, x, y));
                }
            }
            loop_starts.push((p, a, b));
        }
    }
    for (p, entry, exit) in starts.into_iter().chain(loop_starts) {
        if owner.contains_key(&(p, entry)) {
            continue;
        }
        let id = components.len();
        let (mut at, mut entry, mut exit) = (p, entry, exit);
        let mut arcs = Vec::new();
        let mut endpoints = Vec::new();
        if d.step(at, entry).is_none() {
            endpoints.push(entry);
        }
        loop {
            owner.insert((at, entry), id);
            owner.insert((at, exit), id);
            arcs.push(DualArc { at, entry, exit });
            match d.step(at, exit) {
                None => {
                    endpoints.push(exit);
                    break;
                }
                Some(q) => {
                    let e2 = exit.opposite();
                    if owner.contains_key(&(q, e2)) {
                        break;
                    }
                    let x2 = d.get(q).partner(e2).expect("dual occupancy is consistent");
                    at = q;
                    entry = e2;
                    exit = x2;
                }
            }
        }
        let kind = match endpoints.as_slice() {
            [] => ComponentKind::Loop,
            [a, b] if a == b => ComponentKind::XxEdge,
            [a, b] if *a == b.opposite() => ComponentKind::Spanning,
            [_, _] => ComponentKind::XyEdge,
            _ => unreachable!("a walk has zero or two ends"),
        };
        let tiles: BTreeSet<Position> = arcs.iter().map(|a| a.at).collect();
        let bubble = kind == ComponentKind::Loop && arcs.len() == 4;
        components.push(DualComponent {
            kind,
            arcs,
            tiles: sort_row_major(tiles),
            endpoints,
            bubble,
            outermost: false,
        });
    }
    for p in d.positions() {
        if d.get(p) == TileKind::T0 {
            components.push(DualComponent {
                kind: ComponentKind::Type0,
                arcs: Vec::new(),
                tiles: vec![p],
                endpoints: Vec::new(),
                bubble: false,
                outermost: false,
            });
        }
    }
    let outside: Vec<_> = components
        .iter()
        .map(|c| if c.kind.is_edge() { outside_of(d, c) } else { None })
        .collect();
    let mut analysis = DualAnalysis { components, owner, outside };
    let outermost: Vec<bool> = (0..analysis.components.len())
        .map(|e| {
            analysis.outside[e].is_some()
                && !(0..analysis.components.len())
                    .any(|f| analysis.components[f].kind.is_edge() && analysis.lies_outside(f, e))
        })
        .collect();
    for (c, o) in analysis.components.iter_mut().zip(outermost) {
        c.outermost = o;
    }
    analysis
}

fn sort_row_major(tiles: BTreeSet<Position>) -> Vec<Position> {
    let mut v: Vec<Position> = tiles.into_iter().collect();
    v.sort_by_key(|p| (p.row, p.col));
    v
}

/// The smaller of the two regions of `S` cut off by an edge, as quadrants.
/// `None` when both regions have the same area.
fn outside_of(d: &Dual, c: &DualComponent) -> Option<BTreeSet<(Position, usize)>> {
    // walls[tile] = edges whose half-segments the component blocks in that tile
    let mut walls: HashMap<Position, Vec<Edge>> = HashMap::new();
    for a in &c.arcs {
        let w = walls.entry(a.at).or_default();
        w.push(a.entry);
        w.push(a.exit);
    }
    let neighbours = |p: Position, q: usize| -> Vec<(Position, usize)> {
        let mut out = Vec::with_capacity(4);
        let blocked = |e: Edge| walls.get(&p).is_some_and(|w| w.contains(&e));
        // inside the tile: quadrants meet across the half-segments to each edge
        for e in Edge::ALL {
            let [a, b] = quadrants_at(e);
            if (q == a || q == b) && !blocked(e) {
                out.push((p, if q == a { b } else { a }));
            }
        }
        // both arcs of a double-arc tile belong to this component: the middle
        // quadrants still touch diagonally
        if walls.get(&p).is_some_and(|w| w.len() == 4) {
            let diag = match d.get(p) {
                TileKind::IVa => Some((NW, SE)),
                TileKind::IVb => Some((NE, SW)),
                _ => None,
            };
            if let Some((x, y)) = diag {
                if q == x {
                    out.push((p, y));
                } else if q == y {
                    out.push((p, x));
                }
            }
        }
        // across tile edges quadrants are always adjacent
        let across = |e: Edge, target: usize| d.step(p, e).map(|r| (r, target));
        let ext = match q {
            NE => [across(Edge::N, SE), across(Edge::E, NW)],
            NW => [across(Edge::N, SW), across(Edge::W, NE)],
            SW => [across(Edge::S, NW), across(Edge::W, SE)],
            _ => [across(Edge::S, NE), across(Edge::E, SW)],
        };
        out.extend(ext.into_iter().flatten());
        out
    };
    let all: Vec<(Position, usize)> = d.positions().flat_map(|p| (0..4).map(move |q| (p, q))).collect();
    let mut seen: BTreeSet<(Position, usize)> = BTreeSet::new();
    let mut regions: Vec<BTreeSet<(Position, usize)>> = Vec::new();
    for &start in &all {
        if seen.contains(&start) {
            continue;
        }
        let mut region = BTreeSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some((p, q)) = stack.pop() {
            region.insert((p, q));
            for nb in neighbours(p, q) {
                if seen.insert(nb) {
                    stack.push(nb);
                }
            }
        }
        regions.push(region);
    }
    debug_assert_eq!(regions.len(), 2, "an edge cuts S into two regions");
    if regions.len() != 2 {
        return None;
    }
    let (a, b) = (regions[0].len(), regions[1].len());
    match a.cmp(&b) {
        Ordering::Less => Some(regions.swap_remove(0)),
        Ordering::Greater => Some(regions.swap_remove(1)),
        Ordering::Equal => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturated_dual_is_empty() {
        let m = Mosaic::parse("4\n_ 2b 2a _\n2b 5a 5b 2a\n2c 5b 5a 2d\n_ 2c 2d _\n").unwrap();
        let d = compute_dual(&m, IvPolicy::AlwaysA).unwrap();
        assert_eq!(triple(&d), TripleT::default());
        assert!(classify_dual(&d).is_empty());
    }

    #[test]
    fn lexicographic_order() {
        let t = |l, a, b| TripleT { l, l_prime: a, l_dprime: b };
        assert_eq!(compare_t(t(7, 4, 2), t(8, 0, 0)), Ordering::Less);
        assert_eq!(compare_t(t(3, 1, 0), t(3, 1, 0)), Ordering::Equal);
        assert_eq!(compare_t(t(3, 2, 0), t(3, 1, 5)), Ordering::Greater);
    }

    #[test]
    fn bubble_of_type_two_tiles() {
        let d = Dual::parse("4\n_ _ _ _\n_ 2b 2a _\n_ 2c 2d _\n_ _ _ _\n").unwrap();
        assert_eq!(triple(&d), TripleT { l: 4, l_prime: 4, l_dprime: 0 });
        let comps = classify_dual(&d);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Loop);
        assert!(comps[0].bubble);
    }

    #[test]
    fn all_type_zero() {
        let d = Dual::parse("2\n0 0\n0 0\n").unwrap();
        let comps = classify_dual(&d);
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|c| c.kind == ComponentKind::Type0));
        assert_eq!(triple(&d), TripleT { l: 4, l_prime: 0, l_dprime: 0 });
    }

    #[test]
    fn inversion_of_single_dot() {
        let d = Dual::parse("2\n_ _\n0 _\n").unwrap();
        let g = invert_dual(&d, PairingPolicy::AlwaysA, CrossingPolicy::Alternating).unwrap();
        assert_eq!(g.get(Position::new(1, 1)), TileKind::IVa);
        assert!(g.get(Position::new(1, 2)).is_crossing());
        assert!(g.get(Position::new(2, 1)).is_crossing());
        assert!(g.get(Position::new(2, 2)).is_crossing());
    }

    #[test]
    fn corner_edge_is_outermost_xy() {
        // a single arc cutting off the lower-left corner of S
        let d = Dual::parse("3\n_ _ _\n_ _ _\n2a _ _\n").unwrap();
        let comps = classify_dual(&d);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::XyEdge);
        assert!(comps[0].outermost);
        let a = analyze_dual(&d);
        assert_eq!(a.outside_region(0).unwrap().len(), 1);
    }

    #[test]
    fn nested_xx_edges() {
        // two caps on the bottom side, one inside the other
        let d = Dual::parse("4\n_ _ _ _\n2b 3a 3a 2a\n3b 2b 2a 3b\n3b 3b 3b 3b\n").unwrap();
        let comps = classify_dual(&d);
        let edges: Vec<_> = comps.iter().filter(|c| c.kind == ComponentKind::XxEdge).collect();
        assert_eq!(edges.len(), 2);
        let inner = edges.iter().find(|c| c.arcs.len() == 4).unwrap();
        let outer = edges.iter().find(|c| c.arcs.len() == 8).unwrap();
        assert!(inner.outermost);
        assert!(!outer.outermost);
    }
}
