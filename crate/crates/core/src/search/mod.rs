//! Exhaustive enumeration, canonical forms, Jones census, board builders and
//! the crossing-number bounds.

mod bounds;
mod build;
mod canonical;
mod census;
mod enumerate;

pub use bounds::{b1, b2, crossing_upper_bound, mosaic_number_lower_bound, verify_bound, verify_census, BoundError, BoundReport};
pub use build::{build_endless, build_saturated, Closure, CrossingPattern};
pub use canonical::{canonicalize, Canonicalizer};
pub use census::{census, census_resumable, Census, CensusEntry, CensusError};
pub use enumerate::{enumerate_mosaics, prefixes, EnumFilter, EnumOptions, EnumStats, Enumerator};
