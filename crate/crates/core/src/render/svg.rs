use std::fmt::Write;

use super::{bounds, doubled};
use crate::geometry::Cell;
use crate::model::{ParticleConfig, SystemConfig};

/// Hexagon circumradius in SVG user units.
const RADIUS: f64 = 20.0;
const MARGIN: i64 = 2;
const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#9c755f",
];

fn center(c: Cell) -> (f64, f64) {
    let x = c.x as f64;
    let y = c.y as f64;
    (1.5 * RADIUS * x, -(3f64.sqrt()) * RADIUS * (y + x / 2.0))
}

fn hexagon(c: Cell) -> String {
    let (cx, cy) = center(c);
    let mut points = String::new();
    for k in 0..6 {
        let angle = std::f64::consts::PI / 3.0 * k as f64;
        if k > 0 {
            points.push(' ');
        }
        write!(
            points,
            "{:.2},{:.2}",
            cx + RADIUS * angle.cos(),
            cy + RADIUS * angle.sin()
        )
        .unwrap();
    }
    points
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn color(state: &str) -> &'static str {
    // FNV-1a keeps colors stable across platforms and runs.
    let mut h: u32 = 0x811c_9dc5;
    for b in state.bytes() {
        h ^= b as u32;
        h = h.wrapping_mul(0x0100_0193);
    }
    PALETTE[h as usize % PALETTE.len()]
}

fn particle(out: &mut String, p: &ParticleConfig) {
    let fill = color(p.state.as_str());
    writeln!(
        out,
        r#"<g class="particle" data-id="{}" data-state="{}" data-shape="{}">"#,
        p.id.0,
        escape(p.state.as_str()),
        p.shape
    )
    .unwrap();
    let cells = p.cells();
    if let [head, tail] = cells.as_slice() {
        let (x1, y1) = center(*head);
        let (x2, y2) = center(*tail);
        writeln!(
            out,
            r##"<polygon class="cell tail" data-cell="{},{}" points="{}" fill="{fill}" fill-opacity="0.6" stroke="#333" stroke-width="1.5"/>"##,
            tail.x,
            tail.y,
            hexagon(*tail)
        )
        .unwrap();
        writeln!(
            out,
            r#"<line class="body" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{fill}" stroke-width="{:.2}"/>"#,
            RADIUS
        )
        .unwrap();
    }
    let head = p.head;
    writeln!(
        out,
        r##"<polygon class="cell head" data-cell="{},{}" points="{}" fill="{fill}" stroke="#333" stroke-width="1.5"/>"##,
        head.x,
        head.y,
        hexagon(head)
    )
    .unwrap();
    let (hx, hy) = center(head);
    let (tx, ty) = center(head.neighbor(p.orientation));
    let reach = 0.55;
    writeln!(
        out,
        r##"<line class="arrow" data-orientation="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#111" stroke-width="2" marker-end="url(#arrowhead)"/>"##,
        p.orientation,
        hx - (tx - hx) * 0.25,
        hy - (ty - hy) * 0.25,
        hx + (tx - hx) * reach * 0.5,
        hy + (ty - hy) * reach * 0.5
    )
    .unwrap();
    out.push_str("</g>\n");
}

/// An SVG 1.1 document of the configuration. Every drawn cell carries a
/// `data-cell="x,y"` attribute.
pub fn render_svg(sys: &SystemConfig) -> String {
    let b = bounds(sys, MARGIN);
    let sqrt3 = 3f64.sqrt();
    let min_x = 1.5 * RADIUS * b.min_col as f64 - RADIUS;
    let max_x = 1.5 * RADIUS * b.max_col as f64 + RADIUS;
    let min_y = sqrt3 / 2.0 * RADIUS * b.min_row as f64 - RADIUS;
    let max_y = sqrt3 / 2.0 * RADIUS * b.max_row as f64 + RADIUS;
    let (w, h) = (max_x - min_x, max_y - min_y);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="{min_x:.2} {min_y:.2} {w:.2} {h:.2}">"#
    )
    .unwrap();
    out.push_str(
        "<defs><marker id=\"arrowhead\" markerWidth=\"6\" markerHeight=\"6\" refX=\"3\" refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#111\"/></marker></defs>\n",
    );
    writeln!(
        out,
        r##"<rect x="{min_x:.2}" y="{min_y:.2}" width="{w:.2}" height="{h:.2}" fill="#fafafa"/>"##
    )
    .unwrap();

    // Background grid over the viewport.
    out.push_str("<g class=\"grid\" fill=\"none\" stroke=\"#ddd\" stroke-width=\"1\">\n");
    for row in b.min_row..=b.max_row {
        for col in b.min_col..=b.max_col {
            if (row + col).rem_euclid(2) == 0 {
                let cell = Cell::new(col, -(row + col) / 2);
                debug_assert_eq!(doubled(cell), (col, row));
                writeln!(out, r#"<polygon points="{}"/>"#, hexagon(cell)).unwrap();
            }
        }
    }
    out.push_str("</g>\n");

    for p in sys.particles() {
        particle(&mut out, p);
    }

    let (ox, oy) = center(Cell::ORIGIN);
    writeln!(
        out,
        r##"<circle class="origin" cx="{ox:.2}" cy="{oy:.2}" r="3.00" fill="#c00"/>"##
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

/// Cells listed in `data-cell` attributes of an SVG produced by
/// [`render_svg`], in document order.
pub fn svg_cells(svg: &str) -> Vec<Cell> {
    svg.split("data-cell=\"")
        .skip(1)
        .filter_map(|rest| {
            let value = rest.split('"').next()?;
            let (x, y) = value.split_once(',')?;
            Some(Cell::new(x.parse().ok()?, y.parse().ok()?))
        })
        .collect()
}
