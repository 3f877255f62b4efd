//! Pascal-triangle pictures of paths: deterministic SVG and plain ASCII.
//!
//! Point `k` of a path sits at row `k` and column `c1 - c2`. Walls are the
//! columns whose pairing with `α₁` is a multiple of `e`.

use std::fmt::Write as _;

use blobalg::geometry::{GeometryContext, Path};

const CELL: i64 = 24;
const MARGIN: i64 = 24;

/// Labels `v` in `[-d, d]` lying on a wall.
fn wall_labels(ctx: &GeometryContext, d: i64) -> Vec<i64> {
    (-d..=d).filter(|&v| ctx.wall_of_pairing(ctx.pairing_of_label(v)).is_some()).collect()
}

/// SVG with a fixed view box: lattice points as dots, walls as dashed
/// vertical lines labelled by their index, the path as a polyline.
pub fn svg(ctx: &GeometryContext, path: &Path) -> String {
    let d = path.len() as i64;
    let width = 2 * MARGIN + 2 * d * CELL;
    let height = 2 * MARGIN + d * CELL;
    let x = |v: i64| MARGIN + (v + d) * CELL;
    let y = |k: i64| MARGIN + k * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">"#
    );
    let _ = writeln!(out, r#"  <rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#);
    for v in wall_labels(ctx, d) {
        let w = ctx.wall_of_pairing(ctx.pairing_of_label(v)).expect("wall label");
        let _ = writeln!(
            out,
            r#"  <line class="wall" x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="gray" stroke-dasharray="4 3"/>"#,
            x(v),
            MARGIN / 2,
            height - MARGIN / 2
        );
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="10" text-anchor="middle" fill="gray">{}</text>"#,
            x(v),
            MARGIN / 2 - 2,
            w
        );
    }
    for k in 0..=d {
        for v in (-k..=k).step_by(2) {
            let _ = writeln!(out, r#"  <circle cx="{}" cy="{}" r="2" fill="lightgray"/>"#, x(v), y(k));
        }
    }
    let points: Vec<String> =
        path.labels().iter().enumerate().map(|(k, &v)| format!("{},{}", x(v), y(k as i64))).collect();
    let _ = writeln!(
        out,
        r#"  <polyline class="path" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        points.join(" ")
    );
    out.push_str("</svg>\n");
    out
}

/// One line per row: `o` on the path, `.` elsewhere on the lattice, `|` on
/// a wall between lattice points.
pub fn ascii(ctx: &GeometryContext, path: &Path) -> String {
    let d = path.len() as i64;
    let labels = path.labels();
    let walls = wall_labels(ctx, d);
    let mut out = String::new();
    for (k, &on) in labels.iter().enumerate() {
        let k = k as i64;
        let line: String = (-d..=d)
            .map(|v| {
                let lattice = v.abs() <= k && (v + k) % 2 == 0;
                if lattice && v == on {
                    'o'
                } else if lattice {
                    '.'
                } else if walls.contains(&v) {
                    '|'
                } else {
                    ' '
                }
            })
            .collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
