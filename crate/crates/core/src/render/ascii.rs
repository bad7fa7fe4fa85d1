use super::{bounds, doubled};
use crate::geometry::Cell;
use crate::model::SystemConfig;

const ARROWS: [char; 6] = ['↑', '↗', '↘', '↓', '↙', '↖'];
const MARGIN: i64 = 2;

/// Draws the configuration on a viewport fitted to the occupied cells plus a
/// margin of two cells.
///
/// Each text row holds every other column of one doubled row, so neighboring
/// hexagons interleave. Head cells show the orientation as an arrow, tail
/// cells as `o`, free cells as `.`, and a free origin as `+`.
pub fn render_ascii(sys: &SystemConfig) -> String {
    let b = bounds(sys, MARGIN);
    let width = ((b.max_col - b.min_col) * 2 + 1) as usize;
    let mut out = String::new();
    for row in b.min_row..=b.max_row {
        let mut line = vec![' '; width];
        for col in b.min_col..=b.max_col {
            if (row + col).rem_euclid(2) != 0 {
                continue;
            }
            let cell = Cell::new(col, -(row + col) / 2);
            debug_assert_eq!(doubled(cell), (col, row));
            line[((col - b.min_col) * 2) as usize] = glyph(sys, cell);
        }
        let text: String = line.into_iter().collect();
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}

fn glyph(sys: &SystemConfig, cell: Cell) -> char {
    match sys.occupant(cell) {
        Some(p) if p.head == cell => ARROWS[p.orientation.value() as usize],
        Some(_) => 'o',
        None if cell == Cell::ORIGIN => '+',
        None => '.',
    }
}
