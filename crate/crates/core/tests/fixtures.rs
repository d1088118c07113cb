use mosaic_core::dual::{compute_dual, triple, Dual, IvPolicy};
use mosaic_core::poly::{jones, kauffman_bracket, kauffman_bracket_naive, writhe};
use mosaic_core::trace::{classify, component_count, nugatory_crossings, trace_components};
use mosaic_core::search::{Closure, CrossingPattern};
use mosaic_core::{LaurentPoly, Mosaic, Symmetry, Var};

fn read(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn fixture(name: &str) -> Mosaic {
    Mosaic::parse(&read(name)).unwrap()
}

fn t(terms: &[(i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(Var::T, terms.iter().copied())
}

#[test]
fn every_fixture_round_trips() {
    for name in ["trefoil.kmo", "trefoil_miswired.kmo", "m6_three_smoothings.kmo", "e5.kmo", "unknot.kmo"] {
        let text = read(name);
        assert_eq!(Mosaic::parse(&text).unwrap().serialize(), text, "{name}");
    }
    let text = read("m6_three_smoothings.kmd");
    assert_eq!(Dual::parse(&text).unwrap().serialize(), text);
}

#[test]
fn trefoil() {
    let m = fixture("trefoil.kmo");
    let s = classify(&m);
    assert!(s.is_knot());
    assert_eq!(s.crossings, Some(3));
    assert!(nugatory_crossings(&m).unwrap().is_empty());
    // right-handed trefoil from the knot tables
    assert_eq!(jones(&m).unwrap(), t(&[(1, 1), (3, 1), (4, -1)]));
    assert_eq!(jones(&m.mirror()).unwrap(), t(&[(-1, 1), (-3, 1), (-4, -1)]));
}

#[test]
fn miswired_trefoil_is_rejected() {
    let m = fixture("trefoil_miswired.kmo");
    assert_eq!(m.validate().violations.len(), 2);
    assert!(trace_components(&m).is_err());
    assert!(jones(&m).is_err());
}

#[test]
fn unknot_walk() {
    let m = fixture("unknot.kmo");
    let walks = trace_components(&m).unwrap();
    assert_eq!(walks.len(), 1);
    assert!(walks[0].closed);
    assert_eq!(walks[0].steps.len(), 4);
    assert_eq!(jones(&m).unwrap(), t(&[(0, 1)]));
}

#[test]
fn smoothing_dual() {
    let m = fixture("m6_three_smoothings.kmo");
    // three smoothings merged the four components of the saturated board
    assert_eq!(component_count(&m), 1);
    assert_eq!(component_count(&mosaic_core::search::build_saturated(6, Closure::B, CrossingPattern::Alternating)), 4);
    let d = Dual::parse(&read("m6_three_smoothings.kmd")).unwrap();
    assert_eq!(d.positions().filter(|&p| d.get(p) == mosaic_core::TileKind::T0).count(), 3);
    assert_eq!((triple(&d).l, triple(&d).l_prime, triple(&d).l_dprime), (3, 0, 0));
}

#[test]
fn endless_knot() {
    let m = fixture("e5.kmo");
    assert_eq!(m.crossing_count(), 7);
    assert_eq!(writhe(&m).unwrap(), -7);
    // 7_4 from the knot tables; the fixture carries its mirror
    let v74 = t(&[(1, 1), (2, -2), (3, 3), (4, -2), (5, 3), (6, -2), (7, 1), (8, -1)]);
    assert_eq!(jones(&m).unwrap(), v74.invert());
    let d = compute_dual(&m, IvPolicy::Checkerboard).unwrap();
    assert_eq!((triple(&d).l, triple(&d).l_prime, triple(&d).l_dprime), (2, 2, 0));
}

#[test]
fn brackets_agree_and_jones_is_dihedral_invariant() {
    for name in ["trefoil.kmo", "e5.kmo", "m6_three_smoothings.kmo", "unknot.kmo"] {
        let m = fixture(name);
        assert_eq!(kauffman_bracket(&m).unwrap(), kauffman_bracket_naive(&m).unwrap(), "{name}");
        if !classify(&m).is_knot() {
            continue;
        }
        let v = jones(&m).unwrap();
        for g in Symmetry::dihedral() {
            assert_eq!(jones(&m.transform(g)).unwrap(), v, "{name} {}", g.label());
        }
    }
}
