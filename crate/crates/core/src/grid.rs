//! Square tile grids and the `.kmo`/`.kmd` text format.
//!
//! Line 1 holds the size; the following lines list rows from the top (row
//! `n`) down to row 1, tokens separated by single spaces.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tile::{Edge, TileKind};

/// 1-based board coordinate: rows counted from the bottom, columns from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

impl Position {
    pub fn new(row: usize, col: usize) -> Self {
        Position { row, col }
    }

    /// Neighbour across `e` on an `n`-board, if it exists.
    pub fn step(self, e: Edge, n: usize) -> Option<Position> {
        let (dr, dc) = e.delta();
        let row = self.row as isize + dr;
        let col = self.col as isize + dc;
        (row >= 1 && col >= 1 && row <= n as isize && col <= n as isize)
            .then(|| Position::new(row as usize, col as usize))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected a grid size, found {found:?}")]
    BadSize { line: usize, found: String },
    #[error("line {line}, column {column}: unknown species {token:?}")]
    UnknownToken { line: usize, column: usize, token: String },
    #[error("line {line}, column {column}: token {token:?} is not allowed in this grid")]
    ForbiddenToken { line: usize, column: usize, token: String },
    #[error("line {line}: expected {expected} tiles, found {found}")]
    RaggedRow { line: usize, expected: usize, found: usize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("line {line}: unexpected trailing content")]
    Trailing { line: usize },
}

/// Plain `size x size` array of tiles with no connectivity requirements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TileGrid {
    size: usize,
    tiles: Vec<TileKind>,
}

impl TileGrid {
    pub fn filled(size: usize, kind: TileKind) -> Self {
        TileGrid { size, tiles: vec![kind; size * size] }
    }

    /// Builds from tiles in row-major order starting at row 1 (the bottom).
    pub fn from_rows_bottom_up(size: usize, tiles: Vec<TileKind>) -> Self {
        assert_eq!(tiles.len(), size * size, "tile count does not match size");
        TileGrid { size, tiles }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn tiles(&self) -> &[TileKind] {
        &self.tiles
    }

    pub fn index(&self, p: Position) -> usize {
        debug_assert!(p.row >= 1 && p.col >= 1 && p.row <= self.size && p.col <= self.size);
        (p.row - 1) * self.size + (p.col - 1)
    }

    pub fn get(&self, p: Position) -> TileKind {
        self.tiles[self.index(p)]
    }

    pub fn set(&mut self, p: Position, kind: TileKind) {
        let i = self.index(p);
        self.tiles[i] = kind;
    }

    /// All positions, row 1 first, columns left to right.
    pub fn positions(&self) -> impl Iterator<Item = Position> {
        let n = self.size;
        (1..=n).flat_map(move |r| (1..=n).map(move |c| Position::new(r, c)))
    }

    /// Parses a grid, rejecting any token for which `allowed` is false.
    pub fn parse_with(text: &str, allowed: impl Fn(TileKind) -> bool) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines.next().ok_or(ParseError::BadSize { line: 1, found: String::new() })?;
        let size: usize = first
            .trim()
            .parse()
            .map_err(|_| ParseError::BadSize { line: 1, found: first.to_string() })?;
        let mut rows: Vec<Vec<TileKind>> = Vec::with_capacity(size);
        for (idx, line) in lines {
            let line_no = idx + 1;
            if rows.len() == size {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(ParseError::Trailing { line: line_no });
            }
            let mut row = Vec::with_capacity(size);
            let mut column = 1;
            for tok in line.split(' ') {
                if tok.is_empty() {
                    column += 1;
                    continue;
                }
                let kind = TileKind::from_token(tok).ok_or_else(|| ParseError::UnknownToken {
                    line: line_no,
                    column,
                    token: tok.to_string(),
                })?;
                if !allowed(kind) {
                    return Err(ParseError::ForbiddenToken { line: line_no, column, token: tok.to_string() });
                }
                row.push(kind);
                column += tok.len() + 1;
            }
            if row.len() != size {
                return Err(ParseError::RaggedRow { line: line_no, expected: size, found: row.len() });
            }
            rows.push(row);
        }
        if rows.len() != size {
            return Err(ParseError::RowCount { expected: size, found: rows.len() });
        }
        // file lists the top row first
        let tiles = rows.into_iter().rev().flatten().collect();
        Ok(TileGrid { size, tiles })
    }

    /// Canonical text: size line, then rows from the top, single spaces,
    /// newline after every row.
    pub fn serialize(&self) -> String {
        let mut out = format!("{}\n", self.size);
        for r in (1..=self.size).rev() {
            let row: Vec<&str> = (1..=self.size).map(|c| self.get(Position::new(r, c)).token()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for TileGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blank_one_by_one() {
        let g = TileGrid::filled(1, TileKind::I);
        assert_eq!(g.serialize(), "1\n_\n");
        assert_eq!(TileGrid::parse_with("1\n_\n", |_| true).unwrap(), g);
    }

    #[test]
    fn first_line_is_top_row() {
        let g = TileGrid::parse_with("2\n2b 2a\n2c 2d\n", |_| true).unwrap();
        assert_eq!(g.get(Position::new(2, 1)), TileKind::IIb);
        assert_eq!(g.get(Position::new(1, 2)), TileKind::IId);
    }

    #[test]
    fn errors_carry_location() {
        let err = TileGrid::parse_with("2\n2b 6a\n2c 2d\n", |_| true).unwrap_err();
        assert_eq!(err, ParseError::UnknownToken { line: 2, column: 4, token: "6a".into() });
        let err = TileGrid::parse_with("2\n2b\n2c 2d\n", |_| true).unwrap_err();
        assert!(matches!(err, ParseError::RaggedRow { line: 2, expected: 2, found: 1 }));
        let err = TileGrid::parse_with("2\n2b 2a\n", |_| true).unwrap_err();
        assert!(matches!(err, ParseError::RowCount { expected: 2, found: 1 }));
        let err = TileGrid::parse_with("x\n", |_| true).unwrap_err();
        assert!(matches!(err, ParseError::BadSize { .. }));
        let err = TileGrid::parse_with("1\n0\n", |k| k != TileKind::T0).unwrap_err();
        assert!(matches!(err, ParseError::ForbiddenToken { line: 2, column: 1, .. }));
    }

    #[test]
    fn step_stays_on_board() {
        let p = Position::new(1, 1);
        assert_eq!(p.step(Edge::S, 3), None);
        assert_eq!(p.step(Edge::N, 3), Some(Position::new(2, 1)));
        assert_eq!(Position::new(3, 3).step(Edge::E, 3), None);
    }
}
