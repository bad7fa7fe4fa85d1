//! Text and SVG pictures of a configuration.
//!
//! Both renderers use the same embedding: flat-topped hexagons, direction 0
//! pointing up, directions increasing clockwise on screen. Cell `(x, y)` sits
//! at planar position `(1.5 x, -sqrt(3) (y + x / 2))` in units of the hexagon
//! radius, with screen y growing downward.

mod ascii;
mod svg;

pub use ascii::render_ascii;
pub use svg::{render_svg, svg_cells};

use crate::geometry::Cell;
use crate::model::SystemConfig;

/// Inclusive bounds of the occupied cells, or of the origin for an empty
/// system, in doubled-row coordinates `(column, row) = (x, -(2y + x))`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
struct Bounds {
    min_col: i64,
    max_col: i64,
    min_row: i64,
    max_row: i64,
}

fn doubled(c: Cell) -> (i64, i64) {
    (c.x, -(2 * c.y + c.x))
}

fn bounds(sys: &SystemConfig, margin: i64) -> Bounds {
    let cells = sys
        .particles()
        .iter()
        .flat_map(|p| p.cells().as_slice().to_vec());
    let mut b = Bounds {
        min_col: i64::MAX,
        max_col: i64::MIN,
        min_row: i64::MAX,
        max_row: i64::MIN,
    };
    let mut any = false;
    for c in cells.chain(sys.is_empty().then_some(Cell::ORIGIN)) {
        any = true;
        let (col, row) = doubled(c);
        b.min_col = b.min_col.min(col);
        b.max_col = b.max_col.max(col);
        b.min_row = b.min_row.min(row);
        b.max_row = b.max_row.max(row);
    }
    debug_assert!(any);
    b.min_col -= margin;
    b.max_col += margin;
    b.min_row -= 2 * margin;
    b.max_row += 2 * margin;
    b
}
