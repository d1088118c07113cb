use mosaic_core::dual::IvPolicy;
use mosaic_core::moves::{apply_move, find_moves, reduce_to_fixpoint, replay, Embedding, MoveKind};
use mosaic_core::{Mosaic, Position, TileKind};

/// An unknot along the boundary ring, leaving a 4x4 blank interior.
const RING6: &str = "6\n2b 3a 3a 3a 3a 2a\n3b _ _ _ _ 3b\n3b _ _ _ _ 3b\n3b _ _ _ _ 3b\n3b _ _ _ _ 3b\n2c 3a 3a 3a 3a 2d\n";

fn fixture(name: &str) -> Mosaic {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    Mosaic::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn percolation_moves_a_bubble_sideways() {
    let m = Mosaic::parse(RING6).unwrap();
    let e = Embedding::new(&m, IvPolicy::Checkerboard).unwrap();
    let moves: Vec<_> = find_moves(&e).into_iter().filter(|mv| mv.kind == MoveKind::Percolate).collect();
    assert_eq!(moves.len(), 4);
    for mv in &moves {
        let out = apply_move(&e, mv).unwrap();
        assert_eq!(out.mosaic, m);
        let target = mv.anchor[1];
        let (r, c) = (target.row, target.col);
        // lower-left and upper-right hug one diagonal, the other two the other
        let want = [
            ((r, c), TileKind::IVa),
            ((r, c + 1), TileKind::IVb),
            ((r + 1, c), TileKind::IVb),
            ((r + 1, c + 1), TileKind::IVa),
        ];
        for ((r, c), k) in want {
            assert_eq!(out.dual.get(Position::new(r, c)), k, "{mv:?}");
        }
        let changed = e.dual().positions().filter(|&p| e.dual().get(p) != out.dual.get(p)).count();
        assert_eq!(changed, mv.changes.len());
    }
}

#[test]
fn uniform_policies_hold_no_bubbles() {
    let m = Mosaic::parse(RING6).unwrap();
    for policy in [IvPolicy::AlwaysA, IvPolicy::AlwaysB] {
        let e = Embedding::new(&m, policy).unwrap();
        assert!(find_moves(&e).iter().all(|mv| mv.kind != MoveKind::Percolate));
    }
}

#[test]
fn reduction_log_replays() {
    for name in ["trefoil.kmo", "e5.kmo", "m6_three_smoothings.kmo"] {
        let m = fixture(name);
        let red = reduce_to_fixpoint(&m).unwrap();
        let e = replay(&m, &red.log).unwrap();
        assert_eq!(e.mosaic(), &red.mosaic, "{name}");
        for entry in &red.log {
            if entry.kind.reduces_t() {
                assert!(entry.t_after < entry.t_before, "{name}: {entry:?}");
            }
        }
    }
}

#[test]
fn moves_keep_the_knot_type_on_fixtures() {
    for name in ["trefoil.kmo", "e5.kmo"] {
        let m = fixture(name);
        let jones = mosaic_core::poly::jones(&m).unwrap();
        let e = Embedding::new(&m, IvPolicy::default()).unwrap();
        for mv in find_moves(&e) {
            let out = apply_move(&e, &mv).unwrap();
            if out.knot_preserving {
                assert_eq!(mosaic_core::poly::jones(&out.mosaic).unwrap(), jones, "{name}: {mv:?}");
            }
        }
    }
}

#[test]
fn stale_descriptor_is_rejected() {
    let m = Mosaic::parse(RING6).unwrap();
    let e = Embedding::new(&m, IvPolicy::Checkerboard).unwrap();
    let mv = find_moves(&e).into_iter().find(|mv| mv.kind == MoveKind::Percolate).unwrap();
    let after = apply_move(&e, &mv).unwrap();
    let e2 = Embedding::with_dual(&after.mosaic, after.dual).unwrap();
    assert!(apply_move(&e2, &mv).is_err());
}
