//! Writhe, Kauffman bracket and Jones polynomial of mosaic diagrams.
//!
//! A-smoothing of `Va` (vertical strand over) is `IVa`: turning the over
//! strand counterclockwise sweeps the NW and SE quadrants, and `IVa` joins
//! exactly those two regions. `Vb` smooths to `IVb` by the same rule.

mod laurent;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

pub use laurent::{LaurentPoly, Var};

use crate::mosaic::{Mosaic, ValidationReport};
use crate::tile::{Edge, TileKind};
use crate::trace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("mosaic is not suitably connected: {0}")]
    Invalid(ValidationReport),
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
    #[error("the zero polynomial has no breadth")]
    Zero,
    #[error("expected a polynomial in t")]
    WrongVariable,
}

/// The IV tile replacing crossing `kind` under the A (`a = true`) or B smoothing.
pub fn smoothing(kind: TileKind, a: bool) -> TileKind {
    match (kind, a) {
        (TileKind::Va, true) | (TileKind::Vb, false) => TileKind::IVa,
        (TileKind::Va, false) | (TileKind::Vb, true) => TileKind::IVb,
        _ => panic!("smoothing of a non-crossing tile {kind:?}"),
    }
}

/// `delta = -A^2 - A^-2`.
pub fn delta() -> LaurentPoly {
    LaurentPoly::from_terms(Var::A, [(2, -1), (-2, -1)])
}

fn require_components(m: &Mosaic) -> Result<usize, PolyError> {
    let report = m.validate();
    if !report.is_ok() {
        return Err(PolyError::Invalid(report));
    }
    Ok(trace::component_count(m))
}

fn require_knot(m: &Mosaic) -> Result<(), PolyError> {
    match require_components(m)? {
        1 => Ok(()),
        c => Err(PolyError::NotAKnot(c)),
    }
}

/// Sum of crossing signs along the deterministic trace orientation.
pub fn writhe(m: &Mosaic) -> Result<i64, PolyError> {
    require_knot(m)?;
    let walk = &trace::trace_unchecked(m)[0];
    // per crossing: (vertical strand direction, horizontal strand direction)
    let mut dirs: HashMap<_, [(i32, i32); 2]> = HashMap::new();
    for step in &walk.steps {
        if m.get(step.at).is_crossing() {
            let slot = if step.entry.is_vertical() { 0 } else { 1 };
            dirs.entry(step.at).or_default()[slot] = step.direction();
        }
    }
    let mut w = 0;
    for (p, [v, h]) in dirs {
        let (over, under) = if m.get(p) == TileKind::Va { (v, h) } else { (h, v) };
        w += if over.0 * under.1 - over.1 * under.0 > 0 { 1 } else { -1 };
    }
    Ok(w)
}

/// Reference state sum over all `2^c` smoothings. Bit `k` of the state
/// counter selects the B smoothing for the `k`-th crossing in row-major order.
pub fn kauffman_bracket_naive(m: &Mosaic) -> Result<LaurentPoly, PolyError> {
    if require_components(m)? == 0 {
        return Ok(LaurentPoly::one(Var::A));
    }
    let crossings = m.crossing_positions();
    let c = crossings.len();
    assert!(c < 63, "too many crossings for a state sum");
    let d = delta();
    let mut total = LaurentPoly::zero(Var::A);
    let mut smoothed = m.clone();
    for state in 0u64..(1 << c) {
        let mut b = 0i32;
        for (k, &p) in crossings.iter().enumerate() {
            let use_b = state >> k & 1 == 1;
            b += use_b as i32;
            smoothed.set(p, smoothing(m.get(p), !use_b));
        }
        let loops = trace::component_count(&smoothed) as u32;
        let a = c as i32 - b;
        total += &(&d.pow(loops - 1) * &LaurentPoly::monomial(Var::A, 1, a - b));
    }
    Ok(total)
}

/// Kauffman bracket by a scanline transfer over tile edges.
///
/// The frontier holds `n + 1` slots: the N edge of the last tile placed in
/// each column plus the E edge of the last tile in the current row. Each
/// occupied slot carries a label; equal labels are ends of the same open
/// strand. Every closed loop contributes a factor `delta`, divided out once
/// at the end.
pub fn kauffman_bracket(m: &Mosaic) -> Result<LaurentPoly, PolyError> {
    if require_components(m)? == 0 {
        return Ok(LaurentPoly::one(Var::A));
    }
    Ok(bracket_transfer(m))
}

const EMPTY: u8 = 0;

type Frontier = Vec<u8>;

/// Relabels slots in order of first appearance so equal matchings collide.
fn normalize(f: &mut Frontier) {
    let mut map = [EMPTY; 256];
    let mut next = 1u8;
    for s in f.iter_mut() {
        if *s == EMPTY {
            continue;
        }
        if map[*s as usize] == EMPTY {
            map[*s as usize] = next;
            next += 1;
        }
        *s = map[*s as usize];
    }
}

/// Places one non-crossing tile; returns the new frontier and whether a loop closed.
fn place(f: &Frontier, col: usize, kind: TileKind) -> (Frontier, bool) {
    let h = f.len() - 1;
    let (ls, lw) = (f[col], f[h]);
    let mut out = f.clone();
    out[col] = EMPTY;
    out[h] = EMPTY;
    let mut closed = false;
    let fresh = f.iter().copied().max().unwrap_or(0) + 1;
    for &(a, b) in kind.arcs() {
        match (a, b) {
            (Edge::S, Edge::W) | (Edge::W, Edge::S) => {
                if ls == lw {
                    closed = true;
                } else {
                    for s in out.iter_mut() {
                        if *s == lw {
                            *s = ls;
                        }
                    }
                }
            }
            (Edge::N, Edge::E) | (Edge::E, Edge::N) => {
                out[col] = fresh;
                out[h] = fresh;
            }
            (Edge::N, Edge::S) | (Edge::S, Edge::N) => out[col] = ls,
            (Edge::E, Edge::S) | (Edge::S, Edge::E) => out[h] = ls,
            (Edge::N, Edge::W) | (Edge::W, Edge::N) => out[col] = lw,
            (Edge::E, Edge::W) | (Edge::W, Edge::E) => out[h] = lw,
            _ => unreachable!("degenerate arc"),
        }
    }
    normalize(&mut out);
    (out, closed)
}

fn bracket_transfer(m: &Mosaic) -> LaurentPoly {
    let n = m.n();
    let d = delta();
    let a_weight = LaurentPoly::monomial(Var::A, 1, 1);
    let b_weight = LaurentPoly::monomial(Var::A, 1, -1);
    let mut states: HashMap<Frontier, LaurentPoly> = HashMap::new();
    states.insert(vec![EMPTY; n + 1], LaurentPoly::one(Var::A));
    for p in m.positions() {
        let col = p.col - 1;
        let kind = m.get(p);
        let mut next: HashMap<Frontier, LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        let mut push = |f: Frontier, v: LaurentPoly| match next.get_mut(&f) {
            Some(acc) => *acc += &v,
            None => {
                next.insert(f, v);
            }
        };
        for (f, v) in &states {
            if kind.is_crossing() {
                for (a, w) in [(true, &a_weight), (false, &b_weight)] {
                    let (g, closed) = place(f, col, smoothing(kind, a));
                    let mut v2 = v * w;
                    if closed {
                        v2 = &v2 * &d;
                    }
                    push(g, v2);
                }
            } else {
                let (g, closed) = place(f, col, kind);
                push(g, if closed { v * &d } else { v.clone() });
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    let total = states.remove(&vec![EMPTY; n + 1]).unwrap_or_else(|| LaurentPoly::zero(Var::A));
    total.div_exact(&d).expect("every state closes at least one loop")
}

/// `V(t) = (-A^3)^-w <K>` with `t = A^-4`.
pub fn jones(m: &Mosaic) -> Result<LaurentPoly, PolyError> {
    let w = writhe(m)?;
    let bracket = bracket_transfer(m);
    Ok(normalize_bracket(&bracket, w))
}

/// Jones from a precomputed bracket and writhe.
pub fn normalize_bracket(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let factor = LaurentPoly::monomial(Var::A, sign, (-3 * writhe) as i32);
    (&factor * bracket).a_to_t().expect("knot brackets normalize to integral powers of t")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JonesAnalysis {
    pub breadth: i32,
    pub palindromic: bool,
}

pub fn analyze_jones(p: &LaurentPoly) -> Result<JonesAnalysis, PolyError> {
    if p.var() != Var::T {
        return Err(PolyError::WrongVariable);
    }
    let breadth = p.breadth().ok_or(PolyError::Zero)?;
    Ok(JonesAnalysis { breadth, palindromic: p.is_palindromic() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(Var::T, terms.iter().copied())
    }

    const UNKNOT: &str = "2\n2b 2a\n2c 2d\n";
    const KINK: &str = "3\n_ 2b 2a\n2b 5a 2d\n2c 2d _\n";

    #[test]
    fn unknot_square() {
        let m = Mosaic::parse(UNKNOT).unwrap();
        assert_eq!(writhe(&m).unwrap(), 0);
        assert_eq!(kauffman_bracket(&m).unwrap(), LaurentPoly::one(Var::A));
        assert_eq!(jones(&m).unwrap(), LaurentPoly::one(Var::T));
    }

    #[test]
    fn kink_bracket_is_a_monomial() {
        let m = Mosaic::parse(KINK).unwrap();
        let b = kauffman_bracket_naive(&m).unwrap();
        assert_eq!(b.terms().count(), 1);
        assert_eq!(b.coeff(3) + b.coeff(-3), -1);
        assert_eq!(kauffman_bracket(&m).unwrap(), b);
        assert_eq!(jones(&m).unwrap(), LaurentPoly::one(Var::T));
        assert_eq!(jones(&m.mirror()).unwrap(), LaurentPoly::one(Var::T));
    }

    #[test]
    fn empty_board_bracket() {
        assert_eq!(kauffman_bracket(&Mosaic::blank(3)).unwrap(), LaurentPoly::one(Var::A));
        assert!(matches!(jones(&Mosaic::blank(3)), Err(PolyError::NotAKnot(0))));
    }

    #[test]
    fn two_circles_bracket_is_delta() {
        let m = Mosaic::parse("4\n2b 2a _ _\n2c 2d _ _\n_ _ 2b 2a\n_ _ 2c 2d\n").unwrap();
        assert_eq!(kauffman_bracket(&m).unwrap(), delta());
        assert_eq!(kauffman_bracket_naive(&m).unwrap(), delta());
        assert!(writhe(&m).is_err());
    }

    #[test]
    fn analysis() {
        assert_eq!(
            analyze_jones(&LaurentPoly::one(Var::T)).unwrap(),
            JonesAnalysis { breadth: 0, palindromic: true }
        );
        let eight = t(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]);
        assert!(analyze_jones(&eight).unwrap().palindromic);
        assert_eq!(analyze_jones(&LaurentPoly::zero(Var::T)), Err(PolyError::Zero));
        assert_eq!(analyze_jones(&LaurentPoly::one(Var::A)), Err(PolyError::WrongVariable));
    }
}
