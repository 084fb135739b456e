//! SVG rendering of a packing.

use crate::geometry::{packing_height, Packing};
use crate::hole::Hole;
use std::fmt::Write;

const SCALE: i64 = 10;

/// Deterministic SVG 1.1 picture: strip border, filled rectangles labelled with their input
/// index, and optionally the given holes as dashed outlines.
pub fn render_svg(pk: &Packing, holes: &[Hole]) -> String {
    let height = packing_height(pk).max(holes.iter().map(|h| h.bbox().1.y).max().unwrap_or(0)).max(1);
    let (w, h) = (pk.strip_width * SCALE, height * SCALE);
    // Packing y grows upward and screen y downward: a point (x, y) is drawn at
    // (10 x, 10 (H - y)) with H the drawing height.
    let sy = |y: i64| (height - y) * SCALE;
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(s, "<!-- y axis flipped: packing point (x, y) is drawn at ({SCALE}x, {SCALE}({height} - y)) -->");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(
        s,
        "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>"
    );
    for (i, p) in pk.slots.iter().enumerate() {
        let Some(p) = p else { continue };
        let (x, y) = (p.x_min() * SCALE, sy(p.y_max()));
        let (rw, rh) = (p.rect.w * SCALE, p.rect.h * SCALE);
        let _ = writeln!(
            s,
            "<rect x=\"{x}\" y=\"{y}\" width=\"{rw}\" height=\"{rh}\" fill=\"#4a78c2\" stroke=\"#1d3557\" stroke-width=\"1\"/>"
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"{}\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"white\">{i}</text>",
            x + rw / 2,
            y + rh / 2,
            SCALE.min(rh).min(rw).max(4)
        );
    }
    for hole in holes {
        let mut pts: Vec<String> = hole.vertices().iter().map(|p| format!("{},{}", p.x * SCALE, sy(p.y))).collect();
        pts.push(pts[0].clone());
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#d62828\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>",
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Placement;

    #[test]
    fn single_rect_has_one_shape() {
        let pk = Packing::from_placements(4, vec![Placement::at(0, 0, 2, 1)]);
        let svg = render_svg(&pk, &[]);
        assert_eq!(svg.matches("fill=\"#4a78c2\"").count(), 1);
        assert!(svg.contains(">0</text>"));
        assert!(!svg.contains("polyline"));
    }
}
