use std::collections::BTreeSet;
use std::sync::Mutex;

use mosaic_core::search::{
    build_endless, canonicalize, census, enumerate_mosaics, verify_census, Canonicalizer, EnumFilter, EnumOptions,
};
use mosaic_core::trace::classify;
use mosaic_core::{Edge, Mosaic, Position, Symmetry, TileKind};

fn collect(n: usize, filter: &EnumFilter, opts: &EnumOptions) -> BTreeSet<String> {
    let out = Mutex::new(BTreeSet::new());
    enumerate_mosaics(n, filter, opts, &|m| {
        out.lock().unwrap().insert(m.serialize());
    });
    out.into_inner().unwrap()
}

/// Every 3x3 board whose tiles never point off the board, filtered by
/// matching edges between neighbours.
fn brute_force_3() -> BTreeSet<String> {
    let n = 3;
    let positions: Vec<Position> = (1..=n).flat_map(|r| (1..=n).map(move |c| Position::new(r, c))).collect();
    let allowed: Vec<Vec<TileKind>> = positions
        .iter()
        .map(|p| {
            TileKind::ALL
                .iter()
                .copied()
                .filter(|&k| k != TileKind::T0)
                .filter(|k| {
                    let o = k.occupancy();
                    !(p.row == n && o.contains(Edge::N)
                        || p.row == 1 && o.contains(Edge::S)
                        || p.col == 1 && o.contains(Edge::W)
                        || p.col == n && o.contains(Edge::E))
                })
                .collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; positions.len()];
    loop {
        let tiles: Vec<TileKind> = idx.iter().zip(&allowed).map(|(&i, a)| a[i]).collect();
        let at = |r: usize, c: usize| tiles[(r - 1) * n + (c - 1)].occupancy();
        let ok = (1..=n).all(|r| {
            (1..=n).all(|c| {
                (c == n || at(r, c).contains(Edge::E) == at(r, c + 1).contains(Edge::W))
                    && (r == n || at(r, c).contains(Edge::N) == at(r + 1, c).contains(Edge::S))
            })
        });
        if ok {
            out.insert(Mosaic::from_tiles(n, tiles).serialize());
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < allowed[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    let brute = brute_force_3();
    let all = collect(3, &EnumFilter::default(), &EnumOptions::default());
    assert_eq!(all, brute);
    let knots: BTreeSet<String> =
        brute.iter().filter(|s| classify(&Mosaic::parse(s).unwrap()).is_knot()).cloned().collect();
    assert_eq!(collect(3, &EnumFilter::knots(), &EnumOptions::default()), knots);
}

#[test]
fn work_split_does_not_change_the_result() {
    let base = collect(4, &EnumFilter::knots(), &EnumOptions::default());
    assert_eq!(base.len(), 1476);
    for prefix_len in [1, 5, 9] {
        let opts = EnumOptions { prefix_len: Some(prefix_len), seed: Some(3), ..Default::default() };
        assert_eq!(collect(4, &EnumFilter::knots(), &opts), base, "prefix {prefix_len}");
    }
}

#[test]
fn canonical_form_is_a_class_invariant() {
    let e5 = build_endless(2);
    let c = canonicalize(&e5);
    for g in Symmetry::dihedral() {
        assert_eq!(canonicalize(&e5.transform(g)), c, "{}", g.label());
    }
    // the dihedral group alone does not identify a chiral knot with its mirror
    assert_ne!(canonicalize(&e5.mirror()), c);
    let merged = Canonicalizer::with_mirrors(5);
    assert_eq!(merged.canonical(&e5.mirror()), merged.canonical(&e5));
}

#[test]
fn census_of_four_mosaics() {
    let c = census(4, false, &EnumOptions::default());
    assert_eq!(c.len(), 3);
    assert_eq!(c.classes(), 254);
    assert_eq!(c.entries().map(|e| e.count).sum::<u64>(), 254);
    for e in c.entries() {
        assert_eq!(canonicalize(&e.representative), e.representative);
        assert_eq!(mosaic_core::poly::jones(&e.representative).unwrap(), e.jones);
    }
    let report = verify_census(&c).unwrap();
    assert_eq!((report.bound, report.max_breadth, report.sharp), (3, 3, true));
}
