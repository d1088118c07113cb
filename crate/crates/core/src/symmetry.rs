//! The 16 board symmetries: the dihedral group of the square, optionally
//! followed by the mirror (crossing swap).
//!
//! A planar reflection alone would turn a knot into its mirror image, so the
//! reflections here also swap every crossing. The eight dihedral elements are
//! therefore rotations of space and preserve knot type; `mirror` is the only
//! generator that changes it.

use serde::{Deserialize, Serialize};

use crate::grid::{Position, TileGrid};
use crate::tile::{Edge, TileKind};

/// `p -> mirror? . R^quarter_turns . F^reflect (p)`, where `R` is a quarter
/// turn counterclockwise and `F` reflects across the vertical axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Symmetry {
    pub quarter_turns: u8,
    pub reflect: bool,
    pub mirror: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { quarter_turns: 0, reflect: false, mirror: false };
    pub const MIRROR: Symmetry = Symmetry { quarter_turns: 0, reflect: false, mirror: true };

    pub fn rotation(quarter_turns: u8) -> Self {
        Symmetry { quarter_turns: quarter_turns % 4, reflect: false, mirror: false }
    }

    pub fn reflection() -> Self {
        Symmetry { quarter_turns: 0, reflect: true, mirror: false }
    }

    /// The eight knot-type preserving board symmetries.
    pub fn dihedral() -> impl Iterator<Item = Symmetry> {
        (0..2u8).flat_map(|r| (0..4u8).map(move |k| Symmetry { quarter_turns: k, reflect: r == 1, mirror: false }))
    }

    /// All sixteen symmetries.
    pub fn all() -> impl Iterator<Item = Symmetry> {
        Symmetry::dihedral().flat_map(|g| [g, Symmetry { mirror: true, ..g }])
    }

    /// `self . other` (apply `other` first).
    pub fn compose(self, other: Symmetry) -> Symmetry {
        // F R^k = R^-k F
        let k2 = if self.reflect { (4 - other.quarter_turns) % 4 } else { other.quarter_turns };
        Symmetry {
            quarter_turns: (self.quarter_turns + k2) % 4,
            reflect: self.reflect ^ other.reflect,
            mirror: self.mirror ^ other.mirror,
        }
    }

    pub fn inverse(self) -> Symmetry {
        if self.reflect {
            self
        } else {
            Symmetry { quarter_turns: (4 - self.quarter_turns) % 4, ..self }
        }
    }

    pub fn edge(self, e: Edge) -> Edge {
        let mut e = if self.reflect { e.flip() } else { e };
        for _ in 0..self.quarter_turns {
            e = e.rotate_ccw();
        }
        e
    }

    pub fn position(self, p: Position, n: usize) -> Position {
        let mut p = if self.reflect { Position::new(p.row, n + 1 - p.col) } else { p };
        for _ in 0..self.quarter_turns {
            p = Position::new(p.col, n + 1 - p.row);
        }
        p
    }

    pub fn kind(self, k: TileKind) -> TileKind {
        if let Some(vertical) = k.vertical_over() {
            let vertical = vertical ^ (self.quarter_turns % 2 == 1) ^ self.reflect ^ self.mirror;
            return TileKind::crossing(vertical);
        }
        let arcs: Vec<(Edge, Edge)> = k.arcs().iter().map(|&(a, b)| (self.edge(a), self.edge(b))).collect();
        if k == TileKind::T0 {
            return k;
        }
        TileKind::from_arcs(&arcs).expect("symmetries map non-crossing tiles to tiles")
    }

    pub fn grid(self, g: &TileGrid) -> TileGrid {
        let n = g.size();
        let mut out = TileGrid::filled(n, TileKind::I);
        for p in g.positions() {
            out.set(self.position(p, n), self.kind(g.get(p)));
        }
        out
    }

    /// Short label such as `rot90`, `flip.rot180`, `mirror`.
    pub fn label(self) -> String {
        let mut parts = Vec::new();
        if self.reflect {
            parts.push("flip".to_string());
        }
        if self.quarter_turns > 0 {
            parts.push(format!("rot{}", 90 * self.quarter_turns as u32));
        }
        if self.mirror {
            parts.push("mirror".to_string());
        }
        if parts.is_empty() {
            "id".to_string()
        } else {
            parts.join(".")
        }
    }
}

/// Lookup tables for applying one symmetry to flat `n x n` tile arrays.
#[derive(Clone, Debug)]
pub struct SymmetryTable {
    /// `target[i]` is the flat index that tile `i` moves to.
    pub target: Vec<usize>,
    /// Image of each kind, indexed by `TileKind as usize`.
    pub kinds: [TileKind; 12],
}

impl SymmetryTable {
    pub fn new(g: Symmetry, n: usize) -> Self {
        let mut target = vec![0; n * n];
        for r in 1..=n {
            for c in 1..=n {
                let q = g.position(Position::new(r, c), n);
                target[(r - 1) * n + (c - 1)] = (q.row - 1) * n + (q.col - 1);
            }
        }
        let mut kinds = [TileKind::I; 12];
        for k in TileKind::ALL {
            kinds[k as usize] = g.kind(k);
        }
        SymmetryTable { target, kinds }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotate180_swaps_opposite_arcs() {
        let r = Symmetry::rotation(2);
        assert_eq!(r.kind(TileKind::IIa), TileKind::IIc);
        assert_eq!(r.kind(TileKind::IIb), TileKind::IId);
        assert_eq!(r.kind(TileKind::Va), TileKind::Va);
    }

    #[test]
    fn quarter_turn_swaps_lines_and_crossings() {
        let r = Symmetry::rotation(1);
        assert_eq!(r.kind(TileKind::IIIa), TileKind::IIIb);
        assert_eq!(r.kind(TileKind::Va), TileKind::Vb);
        assert_eq!(r.kind(TileKind::IVa), TileKind::IVb);
        // S-W arc turns into an S-E arc
        assert_eq!(r.kind(TileKind::IIa), TileKind::IIb);
    }

    #[test]
    fn reflections_swap_crossings() {
        let f = Symmetry::reflection();
        assert_eq!(f.kind(TileKind::Va), TileKind::Vb);
        assert_eq!(f.kind(TileKind::IIa), TileKind::IIb);
    }

    #[test]
    fn group_laws() {
        let all: Vec<Symmetry> = Symmetry::all().collect();
        assert_eq!(all.len(), 16);
        for &g in &all {
            assert_eq!(g.compose(g.inverse()), Symmetry::IDENTITY);
            for &h in &all {
                for e in Edge::ALL {
                    assert_eq!(g.compose(h).edge(e), g.edge(h.edge(e)));
                }
                for k in TileKind::ALL {
                    assert_eq!(g.compose(h).kind(k), g.kind(h.kind(k)));
                }
                let p = Position::new(2, 3);
                assert_eq!(g.compose(h).position(p, 5), g.position(h.position(p, 5), 5));
            }
        }
    }

    #[test]
    fn edge_and_position_maps_agree() {
        let n = 5;
        for g in Symmetry::all() {
            let p = Position::new(2, 3);
            for e in Edge::ALL {
                let q = p.step(e, n).unwrap();
                assert_eq!(g.position(p, n).step(g.edge(e), n), Some(g.position(q, n)));
            }
        }
    }
}
