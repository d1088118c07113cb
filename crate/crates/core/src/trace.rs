//! Strand following: link components, crossing census, knot detection and
//! monogon (nugatory) crossings.

use serde::Serialize;
use thiserror::Error;

use crate::grid::Position;
use crate::mosaic::{Mosaic, ValidationReport};
use crate::tile::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("mosaic is not suitably connected: {0}")]
    Invalid(ValidationReport),
}

/// One pass of a strand through a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Step {
    pub at: Position,
    pub entry: Edge,
    pub exit: Edge,
}

impl Step {
    /// Unit direction of travel through the tile, `(x, y)`.
    pub fn direction(&self) -> (i32, i32) {
        let (ix, iy) = self.entry.outward();
        let (ox, oy) = self.exit.outward();
        (ox - ix, oy - iy)
    }
}

/// A closed walk along one link component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrandWalk {
    pub steps: Vec<Step>,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceSummary {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossings: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_knot: Option<bool>,
}

impl TraceSummary {
    pub fn is_knot(&self) -> bool {
        self.is_knot == Some(true)
    }
}

/// Lazily follows the strand from `start`; ends early only if the strand
/// runs off the board or into a tile that does not continue it.
fn walk_from(m: &Mosaic, start: Step) -> impl Iterator<Item = Step> + '_ {
    let n = m.n();
    let mut current = Some(start);
    std::iter::from_fn(move || {
        let step = current?;
        current = step.at.step(step.exit, n).and_then(|q| {
            let entry = step.exit.opposite();
            m.get(q).partner(entry).map(|exit| Step { at: q, entry, exit })
        });
        Some(step)
    })
}

/// Closed walks covering every strand of a valid mosaic, sorted by their
/// least `(row, col, edge)` midpoint. Each walk starts at that midpoint's tile
/// and leaves through the lesser edge of its arc.
pub fn trace_components(m: &Mosaic) -> Result<Vec<StrandWalk>, TraceError> {
    let report = m.validate();
    if !report.is_ok() {
        return Err(TraceError::Invalid(report));
    }
    Ok(trace_unchecked(m))
}

/// `trace_components` without the validity check; callers guarantee the
/// mosaic is suitably connected.
pub(crate) fn trace_unchecked(m: &Mosaic) -> Vec<StrandWalk> {
    let n = m.n();
    // visited[tile][edge] marks strand ends already covered
    let mut visited = vec![[false; 4]; n * n];
    let mut walks = Vec::new();
    for p in m.positions() {
        let mut arcs = m.get(p).arcs().to_vec();
        arcs.sort();
        for (a, b) in arcs {
            let idx = m.grid().index(p);
            if visited[idx][a.index()] {
                continue;
            }
            let start = Step { at: p, entry: b, exit: a };
            let mut steps = Vec::new();
            let mut closed = false;
            for step in walk_from(m, start) {
                if !steps.is_empty() && step == start {
                    closed = true;
                    break;
                }
                let i = m.grid().index(step.at);
                if visited[i][step.entry.index()] && !steps.is_empty() {
                    break;
                }
                visited[i][step.entry.index()] = true;
                visited[i][step.exit.index()] = true;
                steps.push(step);
            }
            walks.push(StrandWalk { steps, closed });
        }
    }
    walks
}

/// Number of link components, assuming a valid mosaic.
pub fn component_count(m: &Mosaic) -> usize {
    trace_unchecked(m).len()
}

pub fn classify(m: &Mosaic) -> TraceSummary {
    if !m.is_valid() {
        return TraceSummary { valid: false, components: None, crossings: None, is_knot: None };
    }
    let components = component_count(m);
    TraceSummary {
        valid: true,
        components: Some(components),
        crossings: Some(m.crossing_count()),
        is_knot: Some(components == 1),
    }
}

/// Crossings with a monogon: two of their strand ends are joined by an arc
/// that passes through no crossing tile. Row-major order.
pub fn nugatory_crossings(m: &Mosaic) -> Result<Vec<Position>, TraceError> {
    let report = m.validate();
    if !report.is_ok() {
        return Err(TraceError::Invalid(report));
    }
    Ok(m.crossing_positions().into_iter().filter(|&p| is_monogon(m, p)).collect())
}

pub(crate) fn is_monogon(m: &Mosaic, p: Position) -> bool {
    Edge::ALL.into_iter().any(|e| monogon_end(m, p, e).is_some())
}

/// If the strand leaving crossing `p` through `e` comes back to `p` without
/// meeting another crossing, the edge through which it returns.
pub(crate) fn monogon_end(m: &Mosaic, p: Position, e: Edge) -> Option<Edge> {
    let n = m.n();
    let mut at = p;
    let mut exit = e;
    loop {
        let q = at.step(exit, n)?;
        let entry = exit.opposite();
        if q == p {
            return Some(entry);
        }
        let kind = m.get(q);
        if kind.is_crossing() {
            return None;
        }
        exit = kind.partner(entry)?;
        at = q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tile::TileKind;

    #[test]
    fn unknot_square() {
        let m = Mosaic::parse("2\n2b 2a\n2c 2d\n").unwrap();
        let walks = trace_components(&m).unwrap();
        assert_eq!(walks.len(), 1);
        assert_eq!(walks[0].steps.len(), 4);
        assert!(walks[0].closed);
        // starts at (1,1), leaving through the lesser edge N
        assert_eq!(walks[0].steps[0], Step { at: Position::new(1, 1), entry: Edge::E, exit: Edge::N });
    }

    #[test]
    fn blank_board_has_no_components() {
        let s = classify(&Mosaic::blank(4));
        assert_eq!(s, TraceSummary { valid: true, components: Some(0), crossings: Some(0), is_knot: Some(false) });
    }

    #[test]
    fn invalid_board_summary() {
        let mut m = Mosaic::blank(3);
        m.set(Position::new(2, 2), TileKind::IIa);
        let s = classify(&m);
        assert!(!s.valid);
        assert!(s.components.is_none());
        assert!(trace_components(&m).is_err());
    }

    #[test]
    fn kinked_unknot_has_one_monogon() {
        // single crossing on M3 closed through the ring into a figure eight
        let m = Mosaic::parse("3\n_ 2b 2a\n2b 5a 2d\n2c 2d _\n").unwrap();
        assert!(m.is_valid());
        assert_eq!(component_count(&m), 1);
        assert_eq!(nugatory_crossings(&m).unwrap(), vec![Position::new(2, 2)]);
    }

    #[test]
    fn two_unlinked_circles() {
        let m = Mosaic::parse("4\n2b 2a _ _\n2c 2d _ _\n_ _ 2b 2a\n_ _ 2c 2d\n").unwrap();
        assert_eq!(classify(&m).components, Some(2));
        assert_eq!(classify(&m).is_knot, Some(false));
    }
}
