//! Knot mosaics: tiles, boards, duals, reduction moves, Jones polynomials and
//! exhaustive enumeration.

pub mod dual;
pub mod grid;
pub mod mosaic;
pub mod moves;
pub mod poly;
pub mod search;
pub mod symmetry;
pub mod tile;
pub mod trace;

pub use grid::{ParseError, Position, TileGrid};
pub use mosaic::{Mosaic, MosaicError, ValidationReport, Violation};
pub use poly::{LaurentPoly, Var};
pub use symmetry::Symmetry;
pub use tile::{Edge, EdgeSet, TileKind};
