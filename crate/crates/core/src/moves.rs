//! The six reduction moves on a mosaic together with a chosen dual.
//!
//! Moves act on an [`Embedding`] rather than a bare mosaic: three of them
//! only re-orient type IV dual tiles, which leaves the mosaic untouched.
//! Corner moves are detected in a normalized frame where the arc is a local
//! maximum being pushed down; the frame is undone before anything is
//! reported, so every position in a descriptor is in board coordinates.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dual::{self, analyze_dual, ComponentKind, Dual, DualAnalysis, IvPolicy, TripleT};
use crate::grid::Position;
use crate::mosaic::{Mosaic, ValidationReport};
use crate::symmetry::Symmetry;
use crate::tile::{Edge, TileKind};
use crate::trace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("mosaic is not suitably connected: {0}")]
    Invalid(ValidationReport),
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
    #[error("dual does not complement the mosaic at {0}")]
    Mismatch(Position),
    #[error("move is not applicable here")]
    NotApplicable,
    #[error("log entry {0} does not name an applicable move")]
    Replay(usize),
}

/// A knot mosaic with one particular dual.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Embedding {
    mosaic: Mosaic,
    dual: Dual,
}

impl Embedding {
    pub fn new(m: &Mosaic, policy: IvPolicy) -> Result<Self, MoveError> {
        let report = m.validate();
        if !report.is_ok() {
            return Err(MoveError::Invalid(report));
        }
        match trace::component_count(m) {
            1 => {}
            c => return Err(MoveError::NotAKnot(c)),
        }
        Ok(Embedding { mosaic: m.clone(), dual: dual::dual_unchecked(m, policy) })
    }

    /// Pairs a knot mosaic with an explicit dual, checking the complement law.
    pub fn with_dual(m: &Mosaic, d: Dual) -> Result<Self, MoveError> {
        let e = Embedding::new(m, IvPolicy::AlwaysA)?;
        if d.n() != m.n() {
            return Err(MoveError::Mismatch(Position::new(1, 1)));
        }
        for p in d.positions() {
            let k = d.get(p);
            let ok = match m.get(p) {
                TileKind::I => is_iv(k),
                mk => k == mk.dual_kind(TileKind::I),
            };
            if !ok {
                return Err(MoveError::Mismatch(p));
            }
        }
        Ok(Embedding { dual: d, ..e })
    }

    pub fn mosaic(&self) -> &Mosaic {
        &self.mosaic
    }

    pub fn dual(&self) -> &Dual {
        &self.dual
    }

    pub fn triple(&self) -> TripleT {
        dual::triple(&self.dual)
    }

    pub fn into_parts(self) -> (Mosaic, Dual) {
        (self.mosaic, self.dual)
    }

    fn transform(&self, g: Symmetry) -> Embedding {
        let n = self.mosaic.n();
        let mut d = Dual::blank(n);
        for p in self.dual.positions() {
            d.set(g.position(p, n), g.kind(self.dual.get(p)));
        }
        Embedding { mosaic: self.mosaic.transform(g), dual: d }
    }

    fn apply_changes(&self, changes: &[TileChange]) -> Embedding {
        let mut out = self.clone();
        for c in changes {
            if let Some(k) = c.mosaic {
                out.mosaic.set(c.at, k);
            }
            if let Some(k) = c.dual {
                out.dual.set(c.at, k);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    CornerConversion,
    CornerCorner,
    CornerEdge,
    XxThroughXy,
    BubbleRelease,
    Percolate,
}

impl MoveKind {
    pub const ALL: [MoveKind; 6] = [
        MoveKind::CornerConversion,
        MoveKind::CornerCorner,
        MoveKind::CornerEdge,
        MoveKind::XxThroughXy,
        MoveKind::BubbleRelease,
        MoveKind::Percolate,
    ];

    /// Whether the move strictly lowers `T`; the others leave it unchanged.
    pub fn reduces_t(self) -> bool {
        matches!(self, MoveKind::CornerConversion | MoveKind::CornerCorner | MoveKind::CornerEdge)
    }

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::CornerConversion => "corner_conversion",
            MoveKind::CornerCorner => "corner_corner",
            MoveKind::CornerEdge => "corner_edge",
            MoveKind::XxThroughXy => "xx_through_xy",
            MoveKind::BubbleRelease => "bubble_release",
            MoveKind::Percolate => "percolate",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One tile rewrite; `None` leaves that layer alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TileChange {
    pub at: Position,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mosaic: Option<TileKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<TileKind>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MoveDescriptor {
    pub kind: MoveKind,
    /// Key tiles: the arc's corners for corner moves, the converted tile for
    /// corner conversion, the swapped tile(s) for type IV moves.
    pub anchor: Vec<Position>,
    /// Direction the arc is pushed, for the two corner moves.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<Edge>,
    /// Dual tiles that witnessed applicability.
    pub evidence: Vec<(Position, TileKind)>,
    pub changes: Vec<TileChange>,
}

impl MoveDescriptor {
    fn sort_key(&self) -> (MoveKind, Vec<(usize, usize)>, Option<Edge>) {
        (self.kind, self.anchor.iter().map(|p| (p.row, p.col)).collect(), self.direction)
    }

    /// Whether `entry` names this move.
    pub fn matches(&self, entry: &LogEntry) -> bool {
        self.kind == entry.kind && self.anchor == entry.anchor && self.direction == entry.direction
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum BlockReason {
    /// A dual arc lies directly under the arc being pushed.
    Nested { at: Position, tile: TileKind },
    /// The tile under a corner has a species the move is undefined on.
    UnderCorner { at: Position, tile: TileKind },
}

/// A corner move whose arc is present but which is undefined here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockedMove {
    pub kind: MoveKind,
    pub anchor: Vec<Position>,
    pub direction: Edge,
    pub reason: BlockReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveOutcome {
    pub mosaic: Mosaic,
    pub dual: Dual,
    pub t_before: TripleT,
    pub t_after: TripleT,
    pub knot_preserving: bool,
}

/// A record of one applied move; a log of these replays a reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub kind: MoveKind,
    pub anchor: Vec<Position>,
    pub direction: Option<Edge>,
    pub t_before: TripleT,
    pub t_after: TripleT,
}

/// Every applicable move, sorted by kind priority then row-major anchor.
pub fn find_moves(e: &Embedding) -> Vec<MoveDescriptor> {
    let analysis = analyze_dual(&e.dual);
    let mut out = corner_conversions(e, &analysis);
    let (cc, _) = corner_moves(e, MoveKind::CornerCorner);
    let (ce, _) = corner_moves(e, MoveKind::CornerEdge);
    out.extend(cc);
    out.extend(ce);
    out.extend(xx_through_xy(e, &analysis));
    out.extend(bubble_releases(e, &analysis));
    out.extend(percolations(e));
    out.sort_by_key(MoveDescriptor::sort_key);
    out.dedup();
    out
}

/// Corner-move arcs on which the move is undefined, with the reason.
pub fn blocked_moves(e: &Embedding) -> Vec<BlockedMove> {
    let mut out = corner_moves(e, MoveKind::CornerCorner).1;
    out.extend(corner_moves(e, MoveKind::CornerEdge).1);
    out
}

pub fn apply_move(e: &Embedding, mv: &MoveDescriptor) -> Result<MoveOutcome, MoveError> {
    if !find_moves(e).contains(mv) {
        return Err(MoveError::NotApplicable);
    }
    let after = e.apply_changes(&mv.changes);
    debug_assert!(after.mosaic.is_valid(), "move broke the mosaic: {:?}", mv);
    Ok(MoveOutcome {
        t_before: e.triple(),
        t_after: after.triple(),
        mosaic: after.mosaic,
        dual: after.dual,
        knot_preserving: true,
    })
}

/// Applies `mv` without re-checking applicability.
pub(crate) fn apply_unchecked(e: &Embedding, mv: &MoveDescriptor) -> Embedding {
    e.apply_changes(&mv.changes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub mosaic: Mosaic,
    pub dual: Dual,
    pub log: Vec<LogEntry>,
}

/// Applies moves until none is useful. Strictly `T`-reducing moves are
/// always taken; `T`-neutral moves only when they reach a dual not yet seen
/// at the current `T`, which bounds the neutral steps and guarantees
/// termination.
pub fn reduce_to_fixpoint(m: &Mosaic) -> Result<Reduction, MoveError> {
    let mut e = Embedding::new(m, IvPolicy::default())?;
    let mut seen: HashSet<Dual> = HashSet::from([e.dual.clone()]);
    let mut log = Vec::new();
    loop {
        let mut next = None;
        for mv in find_moves(&e) {
            let after = apply_unchecked(&e, &mv);
            if mv.kind.reduces_t() || !seen.contains(&after.dual) {
                next = Some((mv, after));
                break;
            }
        }
        let Some((mv, after)) = next else { break };
        let (t_before, t_after) = (e.triple(), after.triple());
        if t_after < t_before {
            seen.clear();
        }
        seen.insert(after.dual.clone());
        log.push(LogEntry { kind: mv.kind, anchor: mv.anchor, direction: mv.direction, t_before, t_after });
        e = after;
    }
    let (mosaic, dual) = e.into_parts();
    Ok(Reduction { mosaic, dual, log })
}

/// Re-applies a log to `m`, checking every entry against the moves found.
pub fn replay(m: &Mosaic, log: &[LogEntry]) -> Result<Embedding, MoveError> {
    let mut e = Embedding::new(m, IvPolicy::default())?;
    for (idx, entry) in log.iter().enumerate() {
        let mv = find_moves(&e).into_iter().find(|mv| mv.matches(entry)).ok_or(MoveError::Replay(idx))?;
        let after = apply_unchecked(&e, &mv);
        if e.triple() != entry.t_before || after.triple() != entry.t_after {
            return Err(MoveError::Replay(idx));
        }
        e = after;
    }
    Ok(e)
}

fn pos(row: usize, col: usize) -> Position {
    Position::new(row, col)
}

fn swap_iv(k: TileKind) -> TileKind {
    match k {
        TileKind::IVa => TileKind::IVb,
        TileKind::IVb => TileKind::IVa,
        _ => panic!("not a type IV tile: {k:?}"),
    }
}

fn is_iv(k: TileKind) -> bool {
    matches!(k, TileKind::IVa | TileKind::IVb)
}

fn is_ii(k: TileKind) -> bool {
    k.is_single_arc() && !k.is_line()
}

/// Corner-corner (4 rotations) or corner-edge (8 frames) moves and blocks.
fn corner_moves(e: &Embedding, kind: MoveKind) -> (Vec<MoveDescriptor>, Vec<BlockedMove>) {
    let frames: Vec<Symmetry> = match kind {
        MoveKind::CornerCorner => (0..4).map(Symmetry::rotation).collect(),
        _ => Symmetry::dihedral().collect(),
    };
    let n = e.mosaic.n();
    let mut found = Vec::new();
    let mut blocked = Vec::new();
    for g in frames {
        let f = e.transform(g);
        let analysis = analyze_dual(&f.dual);
        let back = g.inverse();
        let to_board = |p: Position| back.position(p, n);
        let direction = back.edge(Edge::S);
        let arcs = match kind {
            MoveKind::CornerCorner => corner_corner_arcs(&f, &analysis),
            _ => corner_edge_arcs(&f),
        };
        for arc in arcs {
            let anchor = vec![to_board(pos(arc.i, arc.s)), to_board(pos(arc.i, arc.t))];
            match arc.result {
                Err(reason) => {
                    let reason = match reason {
                        BlockReason::Nested { at, tile } => {
                            BlockReason::Nested { at: to_board(at), tile: back.kind(tile) }
                        }
                        BlockReason::UnderCorner { at, tile } => {
                            BlockReason::UnderCorner { at: to_board(at), tile: back.kind(tile) }
                        }
                    };
                    blocked.push(BlockedMove { kind, anchor, direction, reason });
                }
                Ok(changes) => {
                    let mut touched: Vec<Position> = changes.iter().map(|c| c.at).collect();
                    touched.sort_by_key(|p| (p.row, p.col));
                    let changes = changes
                        .into_iter()
                        .map(|c| TileChange {
                            at: to_board(c.at),
                            mosaic: c.mosaic.map(|k| back.kind(k)),
                            dual: c.dual.map(|k| back.kind(k)),
                        })
                        .collect();
                    let evidence = touched
                        .into_iter()
                        .filter(|&p| f.dual.contains(p))
                        .map(|p| (to_board(p), back.kind(f.dual.get(p))))
                        .collect();
                    found.push(MoveDescriptor { kind, anchor, direction: Some(direction), evidence, changes });
                }
            }
        }
    }
    (found, blocked)
}

/// An arc across row `i` from column `s` to `t` in a normalized frame.
struct FrameArc {
    i: usize,
    s: usize,
    t: usize,
    result: Result<Vec<TileChange>, BlockReason>,
}

fn dual_change(at: Position, dual: TileKind, mosaic: TileKind) -> TileChange {
    TileChange { at, mosaic: Some(mosaic), dual: Some(dual) }
}

/// Rows `i` and `i - 1` swap over columns `cols`.
fn swap_rows(f: &Embedding, i: usize, cols: impl Iterator<Item = usize>, out: &mut Vec<TileChange>) {
    for w in cols {
        let (up, down) = (pos(i, w), pos(i - 1, w));
        out.push(dual_change(up, f.dual.get(down), f.mosaic.get(down)));
        out.push(dual_change(down, f.dual.get(up), f.mosaic.get(up)));
    }
}

/// The right-hand corner at `(i, t)` and the tile below it.
fn right_corner(f: &Embedding, i: usize, t: usize, out: &mut Vec<TileChange>) {
    let (c, u) = (pos(i, t), pos(i - 1, t));
    out.push(match f.dual.get(c) {
        TileKind::IIa => dual_change(c, TileKind::T0, TileKind::IVa),
        _ => dual_change(c, TileKind::IIc, TileKind::IIa),
    });
    out.push(match f.dual.get(u) {
        TileKind::IIIb => dual_change(u, TileKind::IIa, TileKind::IIc),
        _ => dual_change(u, TileKind::IIIa, TileKind::IIIb),
    });
}

fn left_corner(f: &Embedding, i: usize, s: usize, out: &mut Vec<TileChange>) {
    let (c, u) = (pos(i, s), pos(i - 1, s));
    out.push(match f.dual.get(c) {
        TileKind::IIb => dual_change(c, TileKind::T0, TileKind::IVb),
        _ => dual_change(c, TileKind::IId, TileKind::IIb),
    });
    out.push(match f.dual.get(u) {
        TileKind::IIIb => dual_change(u, TileKind::IIb, TileKind::IId),
        _ => dual_change(u, TileKind::IIIa, TileKind::IIIb),
    });
}

/// First tile directly under the arc that blocks it.
fn nested_block(f: &Embedding, i: usize, cols: impl Iterator<Item = usize>) -> Option<BlockReason> {
    cols.map(|w| pos(i - 1, w)).find_map(|p| {
        let tile = f.dual.get(p);
        matches!(tile, TileKind::IIa | TileKind::IIb | TileKind::IIIa).then_some(BlockReason::Nested { at: p, tile })
    })
}

fn under_block(f: &Embedding, p: Position, allowed: [TileKind; 2]) -> Option<BlockReason> {
    let tile = f.dual.get(p);
    (!allowed.contains(&tile)).then_some(BlockReason::UnderCorner { at: p, tile })
}

/// Caps `IIb|IVb, IIIa.., IIa|IVa` on edges of the dual, pushed down a row.
fn corner_corner_arcs(f: &Embedding, analysis: &DualAnalysis) -> Vec<FrameArc> {
    let n = f.mosaic.n();
    let mut out = Vec::new();
    for i in 3..n {
        for s in 2..n {
            if !matches!(f.dual.get(pos(i, s)), TileKind::IIb | TileKind::IVb) {
                continue;
            }
            let Some(t) = (s + 1..n).find(|&w| f.dual.get(pos(i, w)) != TileKind::IIIa) else {
                continue;
            };
            if !matches!(f.dual.get(pos(i, t)), TileKind::IIa | TileKind::IVa) {
                continue;
            }
            let on_edge = analysis
                .owner(pos(i, s), Edge::E)
                .is_some_and(|c| analysis.components[c].kind.is_edge());
            if !on_edge {
                continue;
            }
            let block = nested_block(f, i, s + 1..t)
                .or_else(|| under_block(f, pos(i - 1, s), [TileKind::IIIb, TileKind::IId]))
                .or_else(|| under_block(f, pos(i - 1, t), [TileKind::IIIb, TileKind::IIc]));
            let result = match block {
                Some(b) => Err(b),
                None => {
                    let mut ch = Vec::new();
                    swap_rows(f, i, s + 1..t, &mut ch);
                    left_corner(f, i, s, &mut ch);
                    right_corner(f, i, t, &mut ch);
                    Ok(ch)
                }
            };
            out.push(FrameArc { i, s, t, result });
        }
    }
    out
}

/// Arcs entering row `i` from the left side of `S` and turning down at `t`.
fn corner_edge_arcs(f: &Embedding) -> Vec<FrameArc> {
    let n = f.mosaic.n();
    let mut out = Vec::new();
    for i in 3..n {
        let Some(t) = (2..n).find(|&w| f.dual.get(pos(i, w)) != TileKind::IIIa) else {
            continue;
        };
        if !matches!(f.dual.get(pos(i, t)), TileKind::IIa | TileKind::IVa) {
            continue;
        }
        let block = nested_block(f, i, 2..t).or_else(|| under_block(f, pos(i - 1, t), [TileKind::IIIb, TileKind::IIc]));
        let result = match block {
            Some(b) => Err(b),
            None => {
                let mut ch = Vec::new();
                swap_rows(f, i, 2..t, &mut ch);
                right_corner(f, i, t, &mut ch);
                // the knot's detour through the boundary column moves up a row
                let (up, down) = (pos(i, 1), pos(i - 1, 1));
                match f.mosaic.get(down) {
                    TileKind::IIc => {
                        ch.push(TileChange { at: down, mosaic: Some(TileKind::I), dual: None });
                        ch.push(TileChange { at: up, mosaic: Some(TileKind::IIc), dual: None });
                    }
                    TileKind::IIb => {
                        ch.push(TileChange { at: down, mosaic: Some(TileKind::IIIb), dual: None });
                        ch.push(TileChange { at: up, mosaic: Some(TileKind::IIb), dual: None });
                    }
                    k => unreachable!("boundary tile {k:?} beside an occupied edge"),
                }
                Ok(ch)
            }
        };
        out.push(FrameArc { i, s: 2, t, result });
    }
    out
}

/// Ring tiles (outside `S`) in cyclic order.
pub(crate) fn ring(n: usize) -> Vec<Position> {
    let mut r = Vec::with_capacity(4 * n - 4);
    r.extend((1..=n).map(|c| pos(1, c)));
    r.extend((2..=n).map(|row| pos(row, n)));
    r.extend((1..n).rev().map(|c| pos(n, c)));
    r.extend((2..n).rev().map(|row| pos(row, 1)));
    r
}

/// Arcs closing edge `c` into a loop through the blank ring tiles beside its
/// outside, or `None` if the ring there is occupied or there is no outside.
fn ring_closure(e: &Embedding, analysis: &DualAnalysis, c: usize) -> Option<Vec<(Position, TileKind)>> {
    let comp = &analysis.components[c];
    let n = e.mosaic.n();
    let first = comp.arcs.first()?;
    let last = comp.arcs.last()?;
    let (p1, e1) = (first.at, first.entry);
    let (p2, e2) = (last.at, last.exit);
    let r1 = p1.step(e1, n)?;
    let r2 = p2.step(e2, n)?;
    let cycle = ring(n);
    let len = cycle.len();
    let i1 = cycle.iter().position(|&p| p == r1)?;
    let i2 = cycle.iter().position(|&p| p == r2)?;
    for forward in [true, false] {
        let mut path = vec![r1];
        let mut k = i1;
        while k != i2 {
            k = if forward { (k + 1) % len } else { (k + len - 1) % len };
            path.push(cycle[k]);
        }
        // quadrant of p1 beside the first ring step decides the side
        let q = path[1];
        let (dr, dc) = (q.row as isize - r1.row as isize, q.col as isize - r1.col as isize);
        let quadrant = match e1 {
            Edge::N if dc > 0 => dual::NE,
            Edge::N => dual::NW,
            Edge::S if dc > 0 => dual::SE,
            Edge::S => dual::SW,
            Edge::E if dr > 0 => dual::NE,
            Edge::E => dual::SE,
            Edge::W if dr > 0 => dual::NW,
            Edge::W => dual::SW,
        };
        if !analysis.quadrant_outside(c, p1, quadrant) {
            continue;
        }
        if path.iter().any(|&p| e.mosaic.get(p) != TileKind::I) {
            return None;
        }
        let mut arcs = Vec::with_capacity(path.len());
        for (k, &p) in path.iter().enumerate() {
            let toward = |q: Position| {
                Edge::ALL.into_iter().find(|&d| p.step(d, n) == Some(q)).expect("ring neighbours are adjacent")
            };
            let a = if k == 0 { e1.opposite() } else { toward(path[k - 1]) };
            let b = if k + 1 == path.len() { e2.opposite() } else { toward(path[k + 1]) };
            arcs.push((p, TileKind::from_arcs(&[(a, b)])?));
        }
        return Some(arcs);
    }
    None
}

/// Absorbs a dual loop (or an edge closed through the ring) into the knot,
/// under every knot strand, joined at its least type II tile by a crossing.
fn corner_conversions(e: &Embedding, analysis: &DualAnalysis) -> Vec<MoveDescriptor> {
    let mut out = Vec::new();
    for (c, comp) in analysis.components.iter().enumerate() {
        if !matches!(comp.kind, ComponentKind::Loop | ComponentKind::XxEdge | ComponentKind::XyEdge) {
            continue;
        }
        let Some(chosen) = comp.tiles.iter().copied().find(|&p| is_ii(e.dual.get(p))) else {
            continue;
        };
        let closure = if comp.kind == ComponentKind::Loop {
            Vec::new()
        } else {
            match ring_closure(e, analysis, c) {
                Some(arcs) => arcs,
                None => continue,
            }
        };
        let mut changes = Vec::new();
        let mut evidence = Vec::new();
        for &p in &comp.tiles {
            let d = e.dual.get(p);
            evidence.push((p, d));
            let mine: Vec<(Edge, Edge)> =
                d.arcs().iter().copied().filter(|&(a, _)| analysis.owner(p, a) == Some(c)).collect();
            let (mosaic, dual) = match d {
                _ if p == chosen => (TileKind::Va, TileKind::I),
                TileKind::IIIa => (TileKind::Va, TileKind::I),
                TileKind::IIIb => (TileKind::Vb, TileKind::I),
                k if is_ii(k) => {
                    let mut arcs = e.mosaic.get(p).arcs().to_vec();
                    arcs.extend(k.arcs());
                    (TileKind::from_arcs(&arcs).expect("complementary corners form a IV tile"), TileKind::T0)
                }
                k if mine.len() == 2 => (k, TileKind::T0),
                _ => {
                    let other: Vec<_> = d.arcs().iter().copied().filter(|a| !mine.contains(a)).collect();
                    (
                        TileKind::from_arcs(&mine).expect("single arc"),
                        TileKind::from_arcs(&other).expect("single arc"),
                    )
                }
            };
            changes.push(dual_change(p, dual, mosaic));
        }
        for (p, k) in closure {
            changes.push(TileChange { at: p, mosaic: Some(k), dual: None });
        }
        out.push(MoveDescriptor {
            kind: MoveKind::CornerConversion,
            anchor: vec![chosen],
            direction: None,
            evidence,
            changes,
        });
    }
    out
}

fn iv_swap(e: &Embedding, kind: MoveKind, anchor: Vec<Position>, tiles: &[Position]) -> MoveDescriptor {
    let evidence = tiles.iter().map(|&p| (p, e.dual.get(p))).collect();
    let changes =
        tiles.iter().map(|&p| TileChange { at: p, mosaic: None, dual: Some(swap_iv(e.dual.get(p))) }).collect();
    MoveDescriptor { kind, anchor, direction: None, evidence, changes }
}

/// Required arcs of a bubble in the 2x2 block with lower-left `(r, c)`:
/// lower-left, lower-right, upper-left, upper-right.
fn bubble_block(r: usize, c: usize) -> [(Position, TileKind, TileKind); 4] {
    [
        (pos(r, c), TileKind::IIc, TileKind::IVa),
        (pos(r, c + 1), TileKind::IId, TileKind::IVb),
        (pos(r + 1, c), TileKind::IIb, TileKind::IVb),
        (pos(r + 1, c + 1), TileKind::IIa, TileKind::IVa),
    ]
}

fn block_corners(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (2..n.saturating_sub(2)).flat_map(move |r| (2..n - 2).map(move |c| (r, c)))
}

fn bubble_releases(e: &Embedding, analysis: &DualAnalysis) -> Vec<MoveDescriptor> {
    let n = e.mosaic.n();
    let in_bubble: HashSet<Position> =
        analysis.components.iter().filter(|c| c.bubble).flat_map(|c| c.tiles.iter().copied()).collect();
    let mut out = Vec::new();
    for (r, c) in block_corners(n) {
        let block = bubble_block(r, c);
        let wrong: Vec<Position> = block
            .iter()
            .filter(|&&(p, ii, iv)| {
                let k = e.dual.get(p);
                k != ii && k != iv
            })
            .map(|&(p, _, _)| p)
            .collect();
        let [p] = wrong.as_slice() else { continue };
        if !is_iv(e.dual.get(*p)) || in_bubble.contains(p) {
            continue;
        }
        out.push(iv_swap(e, MoveKind::BubbleRelease, vec![pos(r, c), *p], &[*p]));
    }
    out
}

/// Shifts a bubble made of type IV tiles one step into an adjacent block of
/// type IV tiles.
fn percolations(e: &Embedding) -> Vec<MoveDescriptor> {
    let n = e.mosaic.n();
    let mut out = Vec::new();
    let is_bubble = |r: usize, c: usize| bubble_block(r, c).iter().all(|&(p, _, iv)| e.dual.get(p) == iv);
    let all_iv = |r: usize, c: usize| bubble_block(r, c).iter().all(|&(p, _, _)| is_iv(e.dual.get(p)));
    let corners: Vec<(usize, usize)> = block_corners(n).collect();
    for &(r, c) in &corners {
        if !is_bubble(r, c) {
            continue;
        }
        let targets = [(r + 1, c), (r.wrapping_sub(1), c), (r, c + 1), (r, c.wrapping_sub(1))];
        for (r2, c2) in targets {
            if !corners.contains(&(r2, c2)) || !all_iv(r2, c2) {
                continue;
            }
            let tiles: Vec<Position> =
                bubble_block(r2, c2).iter().filter(|&&(p, _, iv)| e.dual.get(p) != iv).map(|&(p, _, _)| p).collect();
            if tiles.is_empty() {
                continue;
            }
            out.push(iv_swap(e, MoveKind::Percolate, vec![pos(r, c), pos(r2, c2)], &tiles));
        }
    }
    out
}

/// IV tiles shared by an XY-edge and an XX-edge outside it, where swapping
/// lowers the number of XX-edges outside XY-edges.
fn xx_through_xy(e: &Embedding, analysis: &DualAnalysis) -> Vec<MoveDescriptor> {
    let before = analysis.xx_outside_xy();
    if before == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for p in e.dual.positions() {
        let k = e.dual.get(p);
        if !is_iv(k) {
            continue;
        }
        let [(a, _), (b, _)] = [k.arcs()[0], k.arcs()[1]];
        let (Some(x), Some(y)) = (analysis.owner(p, a), analysis.owner(p, b)) else { continue };
        let kinds = (analysis.components[x].kind, analysis.components[y].kind);
        let pair = match kinds {
            (ComponentKind::XyEdge, ComponentKind::XxEdge) => Some((x, y)),
            (ComponentKind::XxEdge, ComponentKind::XyEdge) => Some((y, x)),
            _ => None,
        };
        let Some((xy, xx)) = pair else { continue };
        if !analysis.lies_outside(xx, xy) {
            continue;
        }
        let mv = iv_swap(e, MoveKind::XxThroughXy, vec![p], &[p]);
        let after = apply_unchecked(e, &mv);
        if analyze_dual(&after.dual).xx_outside_xy() < before {
            out.push(mv);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn emb(text: &str) -> Embedding {
        Embedding::new(&Mosaic::parse(text).unwrap(), IvPolicy::AlwaysA).unwrap()
    }

    #[test]
    fn saturated_board_has_no_moves() {
        let e = emb("4\n2b 2a 2b 2a\n2c 5a 5b 2d\n2b 5b 5a 2a\n2c 2d 2c 2d\n");
        assert!(find_moves(&e).is_empty());
        let r = reduce_to_fixpoint(e.mosaic()).unwrap();
        assert!(r.log.is_empty());
        assert_eq!(&r.mosaic, e.mosaic());
    }

    #[test]
    fn rejects_links() {
        let m = Mosaic::parse("4\n2b 2a _ _\n2c 2d _ _\n_ _ 2b 2a\n_ _ 2c 2d\n").unwrap();
        assert_eq!(Embedding::new(&m, IvPolicy::AlwaysA), Err(MoveError::NotAKnot(2)));
    }

    #[test]
    fn ring_is_a_cycle_of_boundary_tiles() {
        let r = ring(4);
        assert_eq!(r.len(), 12);
        for k in 0..r.len() {
            let (a, b) = (r[k], r[(k + 1) % r.len()]);
            assert_eq!(a.row.abs_diff(b.row) + a.col.abs_diff(b.col), 1);
        }
    }

    #[test]
    fn unknot_square_in_the_corner_converts_its_edge() {
        // the unknot occupies the top-left 2x2 block; the dual has one XY
        // edge hugging the opposite corner of S
        let e = emb("4\n2b 2a _ _\n2c 2d _ _\n_ _ _ _\n_ _ _ _\n");
        let moves = find_moves(&e);
        assert!(!moves.is_empty());
        for mv in &moves {
            let out = apply_move(&e, mv).unwrap();
            assert!(out.mosaic.is_valid(), "{mv:?}");
            assert_eq!(trace::component_count(&out.mosaic), 1);
            if mv.kind.reduces_t() {
                assert!(out.t_after < out.t_before);
            } else {
                assert_eq!(out.t_after, out.t_before);
            }
        }
        let r = reduce_to_fixpoint(e.mosaic()).unwrap();
        assert!(!r.log.is_empty());
        let replayed = replay(e.mosaic(), &r.log).unwrap();
        assert_eq!(replayed.mosaic(), &r.mosaic);
    }

    #[test]
    fn stale_descriptor_is_rejected() {
        let e = emb("4\n2b 2a _ _\n2c 2d _ _\n_ _ _ _\n_ _ _ _\n");
        let mv = find_moves(&e).remove(0);
        let out = apply_move(&e, &mv).unwrap();
        let e2 = Embedding::with_dual(&out.mosaic, out.dual).unwrap();
        assert_eq!(apply_move(&e2, &mv).unwrap_err(), MoveError::NotApplicable);
    }
}
