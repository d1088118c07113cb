use serde::Serialize;
use thiserror::Error;

use super::build::build_endless;
use super::census::Census;
use super::enumerate::EnumOptions;
use crate::mosaic::Mosaic;
use crate::poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("board size {0} is below 3")]
    BoardTooSmall(usize),
    #[error("crossing number {0} is not positive")]
    NonPositive(i64),
    #[error("breadth {breadth} exceeds the bound {bound} on\n{mosaic}")]
    Exceeded { mosaic: String, breadth: i32, bound: i64 },
    #[error("breadth {breadth} exceeds the crossing count {crossings} on\n{mosaic}")]
    SpanInequality { mosaic: String, breadth: i32, crossings: usize },
    #[error("the census for n={0} is incomplete")]
    Partial(usize),
}

/// Largest crossing number a knot on an `m`-board can have: `(m-2)^2 - 2` for
/// odd `m`, `(m-2)^2 - (m-3)` for even `m`.
pub fn crossing_upper_bound(m: usize) -> Result<i64, BoundError> {
    if m < 3 {
        return Err(BoundError::BoardTooSmall(m));
    }
    let s = (m as i64 - 2).pow(2);
    Ok(if m % 2 == 1 { s - 2 } else { s - (m as i64 - 3) })
}

pub fn b1(c: f64) -> f64 {
    (2.0 + c).sqrt() + 2.0
}

pub fn b2(c: f64) -> f64 {
    (5.0 + (4.0 * c - 3.0).sqrt()) / 2.0
}

/// Least integer `m >= min(B1(c), B2(c))`, decided exactly:
/// `m >= B1` iff `m >= 2` and `(m-2)^2 >= c+2`; `m >= B2` iff `2m >= 5` and
/// `(2m-5)^2 >= 4c-3`.
pub fn mosaic_number_lower_bound(c: i64) -> Result<usize, BoundError> {
    if c <= 0 {
        return Err(BoundError::NonPositive(c));
    }
    let c = c as i128;
    let meets = |m: i128| (m >= 2 && (m - 2).pow(2) >= c + 2) || (2 * m >= 5 && (2 * m - 5).pow(2) >= 4 * c - 3);
    let mut m = 0i128;
    while !meets(m) {
        m += 1;
    }
    Ok(m as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    /// The crossing bound, clamped at 0 so the unknot never violates it.
    pub bound: i64,
    pub max_breadth: i32,
    /// Least representative of a class attaining `max_breadth`.
    #[serde(serialize_with = "kmo")]
    pub witness: Option<Mosaic>,
    pub jones_classes: usize,
    pub knot_classes: u64,
    /// Whether the bound is attained.
    pub sharp: bool,
    /// On odd boards from 5 up: whether the endless knot's class is in the
    /// census and attains the maximum.
    pub endless_attains: Option<bool>,
}

fn kmo<S: serde::Serializer>(m: &Option<Mosaic>, s: S) -> Result<S::Ok, S::Error> {
    match m {
        Some(m) => s.serialize_str(&m.serialize()),
        None => s.serialize_none(),
    }
}

/// Checks `breadth(jones) <= crossing_upper_bound(n)` and the span inequality
/// `breadth <= crossings` over every class of a complete census.
pub fn verify_census(c: &Census) -> Result<BoundReport, BoundError> {
    if c.is_partial() {
        return Err(BoundError::Partial(c.n));
    }
    let bound = if c.n < 3 { 0 } else { crossing_upper_bound(c.n)?.max(0) };
    let mut max_breadth = 0;
    let mut witness = None;
    for e in c.entries() {
        let breadth = e.jones.breadth().expect("the Jones polynomial of a knot is nonzero");
        if i64::from(breadth) > bound {
            return Err(BoundError::Exceeded { mosaic: e.representative.serialize(), breadth, bound });
        }
        if breadth as usize > e.crossings_min {
            return Err(BoundError::SpanInequality {
                mosaic: e.representative.serialize(),
                breadth,
                crossings: e.crossings_min,
            });
        }
        let better = match &witness {
            None => true,
            Some(w) => breadth > max_breadth || (breadth == max_breadth && e.representative.serialize() < Mosaic::serialize(w)),
        };
        if better {
            max_breadth = breadth;
            witness = Some(e.representative.clone());
        }
    }
    let endless_attains = (c.n >= 5 && c.n % 2 == 1 && !c.merge_mirrors).then(|| {
        let e = build_endless((c.n - 1) / 2);
        let v = poly::jones(&e).expect("the endless board is a knot");
        v.breadth() == Some(max_breadth) && c.get(&v).is_some()
    });
    Ok(BoundReport {
        n: c.n,
        bound,
        max_breadth,
        witness,
        jones_classes: c.len(),
        knot_classes: c.classes(),
        sharp: i64::from(max_breadth) == bound,
        endless_attains,
    })
}

/// Enumerates the knot `n`-boards and verifies the bound over all of them.
/// A deadline in `opts` that cuts the run short is an error, not a pass.
pub fn verify_bound(n: usize, opts: &EnumOptions) -> Result<BoundReport, BoundError> {
    verify_census(&super::census::census(n, false, opts))
}
