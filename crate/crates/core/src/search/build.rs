use serde::{Deserialize, Serialize};

use crate::grid::Position;
use crate::mosaic::Mosaic;
use crate::moves::ring;
use crate::tile::{Edge, EdgeSet, TileKind};

/// How the strands leaving a saturated interior are joined through the ring
/// of boundary tiles. Endpoints are numbered around the ring counterclockwise
/// from the one at `(1,2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    /// Endpoints `1-2, 3-4, …, last-0`: on even boards every corner of the
    /// ring carries a strand and each corner crossing becomes a kink.
    A,
    /// Endpoints `0-1, 2-3, …`: on even boards every pair stays on one side.
    B,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingPattern {
    AllA,
    AllB,
    /// `Va` where `row + col` is even: an alternating diagram.
    #[default]
    Alternating,
}

impl CrossingPattern {
    fn at(self, p: Position) -> TileKind {
        let vertical_over = match self {
            CrossingPattern::AllA => true,
            CrossingPattern::AllB => false,
            CrossingPattern::Alternating => (p.row + p.col).is_multiple_of(2),
        };
        TileKind::crossing(vertical_over)
    }
}

fn edge_towards(p: Position, q: Position, n: usize) -> Edge {
    Edge::ALL.into_iter().find(|&e| p.step(e, n) == Some(q)).expect("ring neighbours are adjacent")
}

/// Every interior tile a crossing, the ring closed per `closure`.
///
/// # Panics
/// If `n < 3`: smaller boards have no interior.
pub fn build_saturated(n: usize, closure: Closure, crossings: CrossingPattern) -> Mosaic {
    assert!(n >= 3, "a saturated board needs n >= 3");
    let mut m = Mosaic::blank(n);
    for p in m.interior().collect::<Vec<_>>() {
        m.set(p, crossings.at(p));
    }
    // start the cycle at (1,2) so that endpoint 0 comes first
    let mut cycle = ring(n);
    cycle.rotate_left(1);
    let len = cycle.len();
    let mut occ = vec![EdgeSet::default(); len];
    let mut endpoints = Vec::new();
    for (i, &p) in cycle.iter().enumerate() {
        if let Some(e) = Edge::ALL.into_iter().find(|&e| p.step(e, n).is_some_and(|q| m.is_interior(q))) {
            occ[i] = occ[i].with(e);
            endpoints.push(i);
        }
    }
    let k = endpoints.len();
    let first = match closure {
        Closure::A => 1,
        Closure::B => 0,
    };
    for j in (first..first + k).step_by(2) {
        let (mut i, end) = (endpoints[j % k], endpoints[(j + 1) % k]);
        while i != end {
            let next = (i + 1) % len;
            occ[i] = occ[i].with(edge_towards(cycle[i], cycle[next], n));
            occ[next] = occ[next].with(edge_towards(cycle[next], cycle[i], n));
            i = next;
        }
    }
    for (i, &p) in cycle.iter().enumerate() {
        let edges: Vec<Edge> = occ[i].iter().collect();
        let kind = match edges[..] {
            [] => TileKind::I,
            [a, b] => TileKind::from_arcs(&[(a, b)]).expect("single arc"),
            _ => unreachable!("ring tile with {} strand ends", edges.len()),
        };
        m.set(p, kind);
    }
    m
}

/// The endless knot on a `(2k+1)`-board: the alternating saturated knot with
/// both corner kinks removed, leaving `(2k-1)^2 - 2` crossings.
///
/// # Panics
/// If `k < 2`.
pub fn build_endless(k: usize) -> Mosaic {
    assert!(k >= 2, "the endless family starts at k = 2");
    let n = 2 * k + 1;
    let mut m = build_saturated(n, Closure::B, CrossingPattern::Alternating);
    let corners = [(1, 1), (1, n), (n, n), (n, 1)].map(|(r, c)| Position::new(r, c));
    for corner in corners {
        if m.get(corner) == TileKind::I {
            continue;
        }
        // the kink runs from the crossing diagonally inside the corner,
        // out to the two ring tiles beside the corner and round it
        let inner = Position::new(
            if corner.row == 1 { 2 } else { n - 1 },
            if corner.col == 1 { 2 } else { n - 1 },
        );
        let toward: Vec<Edge> = Edge::ALL
            .into_iter()
            .filter(|&e| inner.step(e, n).is_some_and(|q| !m.is_interior(q)))
            .collect();
        let keep: Vec<Edge> = Edge::ALL.into_iter().filter(|e| !toward.contains(e)).collect();
        m.set(inner, TileKind::from_arcs(&[(keep[0], keep[1])]).expect("single arc"));
        m.set(corner, TileKind::I);
        for e in toward {
            m.set(inner.step(e, n).expect("ring tile"), TileKind::I);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace;

    #[test]
    fn saturated_boards_are_valid() {
        for n in 3..=8 {
            for closure in [Closure::A, Closure::B] {
                for pattern in [CrossingPattern::AllA, CrossingPattern::AllB, CrossingPattern::Alternating] {
                    let m = build_saturated(n, closure, pattern);
                    assert!(m.is_valid(), "n={n} {closure:?}\n{}", m.serialize());
                    assert_eq!(m.crossing_count(), (n - 2) * (n - 2));
                }
            }
        }
    }

    #[test]
    fn even_closures_split_as_expected() {
        let a = build_saturated(4, Closure::A, CrossingPattern::Alternating);
        let b = build_saturated(4, Closure::B, CrossingPattern::Alternating);
        assert_eq!(trace::nugatory_crossings(&a).unwrap().len(), 4);
        assert_eq!(trace::component_count(&b), 2);
        assert_eq!(
            a.serialize(),
            "4\n2b 2a 2b 2a\n2c 5b 5a 2d\n2b 5a 5b 2a\n2c 2d 2c 2d\n"
        );
    }

    #[test]
    fn endless_has_no_kinks() {
        for k in 2..=4 {
            let m = build_endless(k);
            assert!(m.is_valid());
            assert_eq!(m.crossing_count(), (2 * k - 1) * (2 * k - 1) - 2);
            assert_eq!(trace::component_count(&m), 1, "k={k}\n{}", m.serialize());
            assert!(trace::nugatory_crossings(&m).unwrap().is_empty());
        }
    }
}
