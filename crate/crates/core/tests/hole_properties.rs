//! Properties of every live hole met while packing random instances.

use blpack::hole::{EdgeClass, Hole};
use blpack::io::{generate, Family, GeneratorSpec};
use blpack::oracle::point_in_polygon2;
use blpack::packer::{pack_observed, SearchMode};
use blpack::Point;
use proptest::prelude::*;

fn live_holes(seed: u64, n: usize, strip_width: i64, max_dim: i64) -> Vec<Hole> {
    let inst = generate(&GeneratorSpec { family: Family::Random { n, strip_width, max_dim }, seed }).unwrap();
    let mut out = Vec::new();
    pack_observed(&inst, SearchMode::Sequential, |store, _| out.extend(store.holes().iter().cloned())).unwrap();
    out
}

/// Whether the boundary turns right (a convex corner, interior on the right) at `b`.
fn convex(a: Point, b: Point, c: Point) -> bool {
    let cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    cross < 0
}

/// Class from the corner angles at both ends of the edge.
fn class_by_angles(h: &Hole, i: usize) -> EdgeClass {
    let e = h.edge(i);
    let (p, n) = (h.edge(h.prev(i)).from, h.edge(h.next(i)).to);
    let (start, end) = (convex(p, e.from, e.to), convex(e.from, e.to, n));
    let up = e.to.y > e.from.y;
    let down = e.to.y < e.from.y;
    let right = e.to.x > e.from.x;
    match (start, end) {
        (true, true) if up => EdgeClass::Leftmost,
        (true, true) if down => EdgeClass::Rightmost,
        (true, true) if right => EdgeClass::Topmost,
        (true, true) => EdgeClass::Botmost,
        (false, false) if up => EdgeClass::LeftNotch,
        (false, false) if down => EdgeClass::RightNotch,
        (false, false) if right => EdgeClass::TopNotch,
        (false, false) => EdgeClass::BottomNotch,
        _ if up => EdgeClass::PlainUp,
        _ if down => EdgeClass::PlainDown,
        _ if right => EdgeClass::PlainRight,
        _ => EdgeClass::PlainLeft,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_matches_corner_angles(seed in any::<u64>(), n in 1usize..30, w in 2i64..20, d in 1i64..8) {
        for h in live_holes(seed, n, w, d) {
            for i in 0..h.nv() {
                prop_assert_eq!(h.classify_edge(i), class_by_angles(&h, i), "edge {} of {:?}", i, h.vertices());
            }
        }
    }

    #[test]
    fn horizontal_edges_face_the_interior(seed in any::<u64>(), n in 1usize..30, w in 2i64..20, d in 1i64..8) {
        for h in live_holes(seed, n, w, d) {
            for e in h.edges() {
                if e.from.y != e.to.y {
                    continue;
                }
                // Probe half a unit off the first unit of the edge, in doubled coordinates.
                let x2 = 2 * e.x_min() + 1;
                let (above, below) = (point_in_polygon2(h.vertices(), x2, 2 * e.from.y + 1), point_in_polygon2(h.vertices(), x2, 2 * e.from.y - 1));
                if e.to.x < e.from.x {
                    prop_assert!(above && !below, "leftward edge {:?} of {:?}", e, h.vertices());
                } else {
                    prop_assert!(below && !above, "rightward edge {:?} of {:?}", e, h.vertices());
                }
            }
        }
    }
}
