//! Hand-built layouts and holes used by tests, the generators and the CLI.

use crate::geometry::{Placement, Point, Rect};
use crate::hole::Hole;

/// Horizontal shift that lets the left blockers of the BLS layout start at `x = 0`.
pub const BLS_OFFSET: i64 = 28;
/// Strip width of the shifted BLS layout.
pub const BLS_STRIP_WIDTH: i64 = BLS_OFFSET + 26;

/// Four-notch BLS-hole with one falling corner, in unshifted coordinates.
#[rustfmt::skip]
pub fn bls_hole() -> Hole {
    Hole::from_xy(&[
        (7, 1), (7, 2), (8, 2), (8, 3), (12, 3), (12, 4), (8, 4), (8, 9), (6, 9), (6, 5),
        (1, 5), (1, 6), (3, 6), (3, 7), (4, 7), (4, 11), (5, 11), (5, 12), (2, 12), (2, 13),
        (1, 13), (1, 14), (3, 14), (3, 15), (7, 15), (7, 16), (0, 16), (0, 17), (2, 17), (2, 18),
        (6, 18), (6, 19), (12, 19), (12, 15), (24, 15), (24, 10), (21, 10), (21, 8), (17, 8), (17, 6),
        (13, 6), (13, 1),
    ])
    .expect("valid fixture")
}

/// Placements, in BL input order, whose packing leaves `bls_hole()` shifted by `BLS_OFFSET`.
///
/// Left blockers are full-height rows anchored at `x = 0`; then the staircase closing the
/// hole from the right, the block inside the hole, and finally the lid.
#[rustfmt::skip]
pub fn bls_layout() -> Vec<Placement> {
    let d = BLS_OFFSET;
    let rows: [(i64, i64, i64); 17] = [
        (0, 1, 13), (1, 2, 7), (2, 3, 8), (3, 4, 12), (4, 5, 6), (5, 6, 1), (6, 7, 3),
        (7, 11, 4), (11, 12, 5), (12, 13, 2), (13, 14, 1), (14, 15, 3), (15, 16, 7),
        (16, 17, 0), (17, 18, 2), (18, 19, 6), (19, 21, 12),
    ];
    let mut out: Vec<Placement> = rows.iter().map(|&(y0, y1, xm)| Placement::at(0, y0, d + xm, y1 - y0)).collect();
    for &(x0, y0, x1, y1) in &[(13, 0, 17, 6), (17, 0, 21, 8), (21, 0, 24, 10), (24, 0, 26, 15), (6, 4, 8, 9)] {
        out.push(Placement::at(d + x0, y0, x1 - x0, y1 - y0));
    }
    out.push(Placement::at(d + 12, 15, 14, 25));
    out
}

pub fn bls_rects() -> Vec<Rect> {
    bls_layout().iter().map(|p| p.rect).collect()
}

/// Nice hole with two notches whose plain vertical-only partition goes wrong.
#[rustfmt::skip]
pub fn counterexample_hole() -> Hole {
    Hole::from_xy(&[
        (7, 0), (13, 0), (13, 1), (14, 1), (14, 2), (15, 2), (15, 4), (16, 4), (16, 5), (17, 5),
        (17, 6), (18, 6), (18, 7), (19, 7), (19, 8), (2, 8), (2, 6), (10, 6), (10, 5), (2, 5),
        (2, 4), (5, 4), (5, 3), (11, 3), (11, 2), (7, 2),
    ])
    .expect("valid fixture")
}

/// Nice hole with one notch and a falling corner above the notch's right wall.
#[rustfmt::skip]
pub fn falling_corner_hole() -> Hole {
    Hole::from_xy(&[
        (0, 0), (0, 2), (2, 2), (2, 3), (0, 3), (0, 6), (2, 6), (2, 7), (6, 7), (6, 5),
        (9, 5), (9, 3), (7, 3), (7, 0),
    ])
    .expect("valid fixture")
}

/// Packing with three holes on a width-24 strip (input order is the BL order).
#[rustfmt::skip]
pub fn three_hole_layout() -> Vec<Placement> {
    [
        (0, 0, 8, 4), (8, 0, 4, 8), (12, 0, 8, 4), (20, 0, 4, 6), (0, 8, 22, 4),
        (0, 12, 4, 12), (4, 12, 4, 8), (8, 12, 4, 6), (12, 12, 4, 8), (16, 12, 8, 5),
    ]
    .iter()
    .map(|&(x, y, w, h)| Placement::at(x, y, w, h))
    .collect()
}

pub const THREE_HOLE_STRIP_WIDTH: i64 = 24;

pub fn point(x: i64, y: i64) -> Point {
    Point::new(x, y)
}
