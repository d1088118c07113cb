//! ASCII and SVG pictures of tile grids, mosaics and duals alike.

use std::fmt::Write;

use mosaic_core::{Edge, Position, TileGrid, TileKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
}

pub fn render(grid: &TileGrid, format: Format) -> String {
    match format {
        Format::Ascii => ascii(grid),
        Format::Svg => svg(grid),
    }
}

/// Centre glyph; with the edge stubs it tells every kind apart.
fn centre(k: TileKind) -> char {
    match k {
        TileKind::I => ' ',
        TileKind::T0 => 'o',
        TileKind::IIa | TileKind::IIb | TileKind::IIc | TileKind::IId => '+',
        TileKind::IIIa | TileKind::Vb => '-',
        TileKind::IIIb | TileKind::Va => '|',
        // the diagonal whose ends the two arcs hug
        TileKind::IVa => '/',
        TileKind::IVb => '\\',
    }
}

/// One 3x3 cell per tile, top row first.
pub fn ascii(grid: &TileGrid) -> String {
    let n = grid.size();
    let mut out = String::new();
    for row in (1..=n).rev() {
        let mut lines = [String::new(), String::new(), String::new()];
        for col in 1..=n {
            let k = grid.get(Position::new(row, col));
            let o = k.occupancy();
            let on = |e: Edge, c: char| if o.contains(e) { c } else { ' ' };
            lines[0].extend([' ', on(Edge::N, '|'), ' ']);
            lines[1].extend([on(Edge::W, '-'), centre(k), on(Edge::E, '-')]);
            lines[2].extend([' ', on(Edge::S, '|'), ' ']);
        }
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
    }
    out
}

const S: i32 = 40;
const GAP: i32 = 8;

struct Cell {
    x: i32,
    y: i32,
}

impl Cell {
    fn mid(&self, e: Edge) -> (i32, i32) {
        let h = S / 2;
        match e {
            Edge::N => (self.x + h, self.y),
            Edge::S => (self.x + h, self.y + S),
            Edge::E => (self.x + S, self.y + h),
            Edge::W => (self.x, self.y + h),
        }
    }

    fn corner(&self, a: Edge, b: Edge) -> (i32, i32) {
        let v = if a == Edge::N || b == Edge::N { self.y } else { self.y + S };
        let h = if a == Edge::W || b == Edge::W { self.x } else { self.x + S };
        (h, v)
    }
}

/// Quarter circle between two adjacent edge midpoints, centred on their corner.
fn arc(out: &mut String, cell: &Cell, a: Edge, b: Edge) {
    let (ax, ay) = cell.mid(a);
    let (bx, by) = cell.mid(b);
    let (cx, cy) = cell.corner(a, b);
    let sweep = ((ax - cx) * (by - cy) - (ay - cy) * (bx - cx) > 0) as u8;
    let r = S / 2;
    writeln!(out, r#"<path class="arc" d="M{ax} {ay} A{r} {r} 0 0 {sweep} {bx} {by}"/>"#).unwrap();
}

fn line(out: &mut String, class: &str, (x1, y1): (i32, i32), (x2, y2): (i32, i32)) {
    writeln!(out, r#"<line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#).unwrap();
}

/// Unit grid scaled to 40px per tile; strands, crossings with a gap in the
/// under-strand, and dots for type 0 tiles.
pub fn svg(grid: &TileGrid) -> String {
    let n = grid.size() as i32;
    let w = n * S;
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#).unwrap();
    out.push_str(
        "<style>.grid{stroke:#ccc;stroke-width:1}.arc,.strand,.crossing line{fill:none;stroke:#000;stroke-width:3}.dot{fill:#000}</style>\n",
    );
    for i in 0..=n {
        line(&mut out, "grid", (i * S, 0), (i * S, w));
        line(&mut out, "grid", (0, i * S), (w, i * S));
    }
    for p in grid.positions() {
        let k = grid.get(p);
        let cell = Cell { x: (p.col as i32 - 1) * S, y: (n - p.row as i32) * S };
        match k {
            TileKind::I => {}
            TileKind::T0 => {
                let (cx, cy) = (cell.x + S / 2, cell.y + S / 2);
                writeln!(out, r#"<circle class="dot" cx="{cx}" cy="{cy}" r="{}"/>"#, S / 8).unwrap();
            }
            TileKind::Va | TileKind::Vb => {
                let (over, under) = if k == TileKind::Va { ((Edge::N, Edge::S), (Edge::W, Edge::E)) } else { ((Edge::W, Edge::E), (Edge::N, Edge::S)) };
                let (cx, cy) = (cell.x + S / 2, cell.y + S / 2);
                let (ux, uy) = cell.mid(under.0);
                let (vx, vy) = cell.mid(under.1);
                // stop each half of the under-strand GAP short of the centre
                let short = |(x, y): (i32, i32)| (cx + (x - cx).signum() * GAP, cy + (y - cy).signum() * GAP);
                out.push_str(r#"<g class="crossing">"#);
                out.push('\n');
                line(&mut out, "over", cell.mid(over.0), cell.mid(over.1));
                line(&mut out, "under", (ux, uy), short((ux, uy)));
                line(&mut out, "under", short((vx, vy)), (vx, vy));
                out.push_str("</g>\n");
            }
            _ => {
                for &(a, b) in k.arcs() {
                    if a.opposite() == b {
                        line(&mut out, "strand", cell.mid(a), cell.mid(b));
                    } else {
                        arc(&mut out, &cell, a, b);
                    }
                }
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mosaic_core::Mosaic;
    use proptest::prelude::*;

    #[test]
    fn unknot_ascii() {
        let m = Mosaic::parse("2\n2b 2a\n2c 2d\n").unwrap();
        assert_eq!(ascii(m.grid()), "      \n +--+ \n |  | \n |  | \n +--+ \n      \n");
    }

    #[test]
    fn svg_counts() {
        let m = Mosaic::parse("2\n2b 2a\n2c 2d\n").unwrap();
        let s = svg(m.grid());
        assert_eq!(s.matches(r#"<path class="arc""#).count(), 4);
        assert_eq!(s.matches(r#"class="crossing""#).count(), 0);
    }

    fn arb_grid() -> impl Strategy<Value = TileGrid> {
        prop::collection::vec(prop::sample::select(TileKind::ALL.to_vec()), 9)
            .prop_map(|t| TileGrid::from_rows_bottom_up(3, t))
    }

    proptest! {
        #[test]
        fn distinct_grids_render_differently(a in arb_grid(), b in arb_grid()) {
            prop_assume!(a != b);
            prop_assert_ne!(ascii(&a), ascii(&b));
            prop_assert_ne!(svg(&a), svg(&b));
        }

        #[test]
        fn deterministic(a in arb_grid()) {
            prop_assert_eq!(svg(&a), svg(&a.clone()));
        }
    }
}
