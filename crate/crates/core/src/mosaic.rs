//! The mosaic grid and suitably-connected validation.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::grid::{ParseError, Position, TileGrid};
use crate::symmetry::Symmetry;
use crate::tile::{Edge, TileKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MosaicError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("type 0 tile at {0} is not allowed in a mosaic")]
    DualTile(Position),
}

/// An `n x n` board of mosaic tiles. Never contains `T0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mosaic {
    grid: TileGrid,
}

impl Mosaic {
    pub fn new(grid: TileGrid) -> Result<Self, MosaicError> {
        if let Some(p) = grid.positions().find(|&p| grid.get(p) == TileKind::T0) {
            return Err(MosaicError::DualTile(p));
        }
        Ok(Mosaic { grid })
    }

    pub fn blank(n: usize) -> Self {
        Mosaic { grid: TileGrid::filled(n, TileKind::I) }
    }

    /// Row-major tiles starting at row 1. Panics on `T0`.
    pub fn from_tiles(n: usize, tiles: Vec<TileKind>) -> Self {
        Mosaic::new(TileGrid::from_rows_bottom_up(n, tiles)).expect("mosaic tiles")
    }

    pub fn parse(text: &str) -> Result<Self, MosaicError> {
        let grid = TileGrid::parse_with(text, TileKind::is_mosaic_legal)?;
        Ok(Mosaic { grid })
    }

    pub fn serialize(&self) -> String {
        self.grid.serialize()
    }

    pub fn n(&self) -> usize {
        self.grid.size()
    }

    pub fn grid(&self) -> &TileGrid {
        &self.grid
    }

    pub fn tiles(&self) -> &[TileKind] {
        self.grid.tiles()
    }

    pub fn get(&self, p: Position) -> TileKind {
        self.grid.get(p)
    }

    /// Panics if `kind` is `T0`.
    pub fn set(&mut self, p: Position, kind: TileKind) {
        assert!(kind.is_mosaic_legal(), "type 0 tile in a mosaic");
        self.grid.set(p, kind);
    }

    pub fn positions(&self) -> impl Iterator<Item = Position> {
        self.grid.positions()
    }

    pub fn is_interior(&self, p: Position) -> bool {
        let n = self.n();
        p.row >= 2 && p.col >= 2 && p.row < n && p.col < n
    }

    /// Positions of `S`, row-major from the bottom.
    pub fn interior(&self) -> impl Iterator<Item = Position> + '_ {
        self.positions().filter(move |&p| self.is_interior(p))
    }

    pub fn crossing_positions(&self) -> Vec<Position> {
        self.positions().filter(|&p| self.get(p).is_crossing()).collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.tiles().iter().filter(|k| k.is_crossing()).count()
    }

    pub fn transform(&self, g: Symmetry) -> Mosaic {
        Mosaic { grid: g.grid(&self.grid) }
    }

    pub fn mirror(&self) -> Mosaic {
        self.transform(Symmetry::MIRROR)
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.n();
        let mut violations = Vec::new();
        for p in self.positions() {
            let occ = self.get(p).occupancy();
            for e in Edge::ALL {
                match p.step(e, n) {
                    None => {
                        if occ.contains(e) {
                            violations.push(Violation::Boundary { at: p, edge: e });
                        }
                    }
                    // each shared edge is checked once, from its lower/left tile
                    Some(q) if matches!(e, Edge::N | Edge::E) => {
                        let theirs = self.get(q).occupancy().contains(e.opposite());
                        if occ.contains(e) != theirs {
                            violations.push(Violation::Mismatch { at: p, edge: e, neighbor: q });
                        }
                    }
                    Some(_) => {}
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }
}

/// Serializes as the `.kmo` text.
impl Serialize for Mosaic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.serialize())
    }
}

impl fmt::Debug for Mosaic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// A strand end that fails to meet a partner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The tiles on either side of an interior grid edge disagree.
    Mismatch { at: Position, edge: Edge, neighbor: Position },
    /// A strand touches the edge of the board.
    Boundary { at: Position, edge: Edge },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("suitably connected");
        }
        write!(f, "{} violation(s):", self.violations.len())?;
        for v in &self.violations {
            match v {
                Violation::Mismatch { at, edge, neighbor } => write!(f, " {at}{edge}/{neighbor}")?,
                Violation::Boundary { at, edge } => write!(f, " {at}{edge}|")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNKNOT: &str = "2\n2b 2a\n2c 2d\n";

    #[test]
    fn smallest_unknot_round_trips() {
        let m = Mosaic::parse(UNKNOT).unwrap();
        assert_eq!(m.n(), 2);
        assert!(m.is_valid());
        assert_eq!(m.serialize(), UNKNOT);
    }

    #[test]
    fn rejects_type_zero() {
        assert!(matches!(Mosaic::parse("1\n0\n"), Err(MosaicError::Parse(ParseError::ForbiddenToken { .. }))));
        assert!(matches!(Mosaic::parse("2\n6a _\n_ _\n"), Err(MosaicError::Parse(ParseError::UnknownToken { .. }))));
    }

    #[test]
    fn blank_board_is_valid() {
        assert!(Mosaic::blank(5).is_valid());
    }

    #[test]
    fn boundary_crossing_is_rejected() {
        let mut m = Mosaic::blank(3);
        m.set(Position::new(1, 2), TileKind::Va);
        let report = m.validate();
        assert!(!report.is_ok());
        assert!(report.violations.contains(&Violation::Boundary { at: Position::new(1, 2), edge: Edge::S }));
    }

    #[test]
    fn mismatch_reported_once_per_edge() {
        let m = Mosaic::parse("2\n2b 2a\n2c _\n").unwrap();
        let report = m.validate();
        assert_eq!(
            report.violations,
            vec![
                Violation::Mismatch { at: Position::new(1, 1), edge: Edge::E, neighbor: Position::new(1, 2) },
                Violation::Mismatch { at: Position::new(1, 2), edge: Edge::N, neighbor: Position::new(2, 2) },
            ]
        );
    }
}
