use crate::mosaic::Mosaic;
use crate::symmetry::{Symmetry, SymmetryTable};
use crate::tile::TileKind;

/// Dihedral canonical forms on one board size: the image with the least
/// serialization. Mirror images are not identified.
#[derive(Clone, Debug)]
pub struct Canonicalizer {
    n: usize,
    /// `(source index for each target index, kind map)` per non-identity element.
    images: Vec<(Vec<usize>, [TileKind; 12])>,
    /// Flat indices in serialization order: top row first.
    order: Vec<usize>,
}

impl Canonicalizer {
    pub fn new(n: usize) -> Self {
        Canonicalizer::over(n, Symmetry::dihedral())
    }

    /// Also identifies each board with its mirror image.
    pub fn with_mirrors(n: usize) -> Self {
        Canonicalizer::over(n, Symmetry::all())
    }

    fn over(n: usize, group: impl Iterator<Item = Symmetry>) -> Self {
        let images = group
            .filter(|&g| g != Symmetry::IDENTITY)
            .map(|g| {
                let t = SymmetryTable::new(g, n);
                let mut src = vec![0; n * n];
                for (i, &j) in t.target.iter().enumerate() {
                    src[j] = i;
                }
                (src, t.kinds)
            })
            .collect();
        let order = (0..n).rev().flat_map(|r| (0..n).map(move |c| r * n + c)).collect();
        Canonicalizer { n, images, order }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether no dihedral image serializes strictly before `tiles`.
    pub fn is_canonical(&self, tiles: &[TileKind]) -> bool {
        self.images.iter().all(|(src, kinds)| {
            for &j in &self.order {
                let mine = tiles[j].serial_rank();
                let theirs = kinds[tiles[src[j]] as usize].serial_rank();
                if theirs != mine {
                    return theirs > mine;
                }
            }
            true
        })
    }

    pub fn canonical(&self, m: &Mosaic) -> Mosaic {
        assert_eq!(m.n(), self.n, "board size mismatch");
        let mut best: Vec<TileKind> = m.tiles().to_vec();
        for (src, kinds) in &self.images {
            let image: Vec<TileKind> = (0..best.len()).map(|j| kinds[m.tiles()[src[j]] as usize]).collect();
            let less = self
                .order
                .iter()
                .map(|&j| (image[j].serial_rank(), best[j].serial_rank()))
                .find(|(a, b)| a != b)
                .is_some_and(|(a, b)| a < b);
            if less {
                best = image;
            }
        }
        Mosaic::from_tiles(self.n, best)
    }
}

/// Least serialization among the 8 rotations and reflections of `m`.
pub fn canonicalize(m: &Mosaic) -> Mosaic {
    Canonicalizer::new(m.n()).canonical(m)
}
