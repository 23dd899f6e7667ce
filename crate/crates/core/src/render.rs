//! Static SVG drawings: chord diagrams and local-model sector plots.
//!
//! Diagram conventions: positive arcs thick and black, negative arcs thin and
//! grey, `Q_0` at the bottom with indices increasing counter-clockwise.

use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use crate::diagram::{ChordDiagram, Sign};
use crate::localmodel::LocalModel;

const SIZE: f64 = 320.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 120.0;

fn point_angle(i: usize, n: usize) -> f64 {
    -PI / 2.0 + TAU * i as f64 / n as f64
}

/// Screen coordinates; y grows downwards, so the angle is mirrored.
fn polar(angle: f64, r: f64) -> (f64, f64) {
    (CENTER + r * angle.cos(), CENTER - r * angle.sin())
}

fn arc_style(sign: Sign) -> &'static str {
    match sign {
        Sign::Pos => r##"stroke="#111" stroke-width="5""##,
        Sign::Neg => r##"stroke="#999" stroke-width="1.5""##,
    }
}

pub fn diagram_svg(d: &ChordDiagram) -> String {
    let n = d.point_count();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", d.encode());
    for arc in 0..n {
        let (a0, a1) = (point_angle(arc, n), point_angle(arc + 1, n));
        let (x0, y0) = polar(a0, RADIUS);
        let (x1, y1) = polar(a1, RADIUS);
        let large = if n == 1 { 1 } else { 0 };
        // sweep-flag 0: counter-clockwise on screen
        let _ = writeln!(
            out,
            r#"<path class="arc {}" d="M {x0:.2} {y0:.2} A {RADIUS} {RADIUS} 0 {large} 0 {x1:.2} {y1:.2}" fill="none" {}/>"#,
            d.arc_sign(arc).as_str(),
            arc_style(d.arc_sign(arc)),
        );
    }
    for &(a, b) in d.chords() {
        let (x0, y0) = polar(point_angle(a, n), RADIUS);
        let (x1, y1) = polar(point_angle(b, n), RADIUS);
        // bend towards the centre so that chords through it stay visible
        let mid = (point_angle(a, n) + point_angle(b, n)) / 2.0;
        let (cx, cy) = polar(mid, RADIUS * 0.15);
        let _ = writeln!(
            out,
            r##"<path class="chord" d="M {x0:.2} {y0:.2} Q {cx:.2} {cy:.2} {x1:.2} {y1:.2}" fill="none" stroke="#c33" stroke-width="2"/>"##
        );
    }
    for i in 0..n {
        let (x, y) = polar(point_angle(i, n), RADIUS);
        let (lx, ly) = polar(point_angle(i, n), RADIUS + 18.0);
        let fill = if d.is_free(i) { "#fff" } else { "#c33" };
        let _ = writeln!(
            out,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="4.5" fill="{fill}" stroke="#000"/>"##
        );
        let _ = writeln!(
            out,
            r#"<text x="{lx:.2}" y="{ly:.2}" font-size="12" text-anchor="middle" dominant-baseline="middle">Q{i}</text>"#
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Upper half-disk split by the zero rays, sectors shaded by sign.
pub fn local_model_svg(m: &LocalModel) -> String {
    let mut out = String::new();
    let height = CENTER + 20.0;
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {height}" width="{SIZE}" height="{height}">"#
    );
    let mut bounds = vec![0.0];
    bounds.extend(m.ray_angles().iter().map(|r| r.radians()));
    bounds.push(PI);
    for (w, sign) in bounds.windows(2).zip(m.sector_signs()) {
        let (x0, y0) = polar(w[0], RADIUS);
        let (x1, y1) = polar(w[1], RADIUS);
        let fill = match sign {
            Sign::Pos => "#f2c9a0",
            Sign::Neg => "#a9c6e8",
        };
        let _ = writeln!(
            out,
            r#"<path class="sector {}" d="M {CENTER} {CENTER} L {x0:.2} {y0:.2} A {RADIUS} {RADIUS} 0 0 0 {x1:.2} {y1:.2} Z" fill="{fill}"/>"#,
            sign.as_str()
        );
        let (tx, ty) = polar((w[0] + w[1]) / 2.0, RADIUS * 0.7);
        let _ = writeln!(
            out,
            r#"<text x="{tx:.2}" y="{ty:.2}" font-size="14" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
            sign.symbol()
        );
    }
    for r in m.ray_angles() {
        let (x, y) = polar(r.radians(), RADIUS);
        let _ = writeln!(
            out,
            r##"<line class="ray" x1="{CENTER}" y1="{CENTER}" x2="{x:.2}" y2="{y:.2}" stroke="#222" stroke-width="1.5"/>"##
        );
    }
    let _ = writeln!(
        out,
        r##"<line x1="{}" y1="{CENTER}" x2="{}" y2="{CENTER}" stroke="#222" stroke-width="2.5"/>"##,
        CENTER - RADIUS,
        CENTER + RADIUS
    );
    out.push_str("</svg>\n");
    out
}
