//! Cutting a BLS-hole into nice holes and reassembling the placements found in them.
//!
//! Each left notch `N_i` has its upper vertex `Q_i`, the first boundary point `QN_i` above it
//! and the first boundary point `QW_i` to its right. Notches narrower than the rectangle are
//! closed off with horizontal cuts `Q_i QW_i`; the remaining pieces are cut vertically along
//! `Q_i QN_i` into nice holes. The nice hole left of a vertical cut gets the box between the
//! cut and `QW_i` glued back on, so that rectangles resting in it may stick out across the cut.

use crate::geometry::{Point, Rect};
use crate::hole::{trace_cycles, Dir, Hole, OrderingError};
use crate::scan::{all_bl_locs, NiceError, NiceHole, Visits};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error(transparent)]
    Ordering(#[from] OrderingError),
    #[error("anchor of the notch ending at {0} was never resolved")]
    Unresolved(Point),
    #[error("partition produced a piece that is not a nice hole: {0}")]
    NotNice(#[from] NiceError),
    #[error("cut produced an invalid boundary: {0}")]
    Boundary(String),
}

/// A boundary point together with the index of an edge whose closed segment contains it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OnEdge {
    pub point: Point,
    pub edge: usize,
}

/// Special points of one left notch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Anchor {
    /// Upper vertex of the notch edge.
    pub q: OnEdge,
    pub qn: OnEdge,
    /// Upper end of the wall through `qn` when `qn` is the foot of a downward edge.
    pub qn_star: Point,
    pub qw: OnEdge,
}

impl Anchor {
    pub fn width(&self) -> i64 {
        self.qw.point.x - self.q.point.x
    }
}

/// `QN_i` and `QN_i*` for every notch, in one clockwise pass from the rightmost edge.
///
/// Each `Q_i` waits in a table keyed by `x` until a later horizontal edge above it covers
/// that `x`.
pub fn compute_qn_points(
    h: &Hole,
    notches: &[usize],
    visits: &mut Visits,
) -> Result<Vec<(OnEdge, Point)>, PartitionError> {
    let ord = h.canonical_ordering()?;
    let slot: BTreeMap<usize, usize> = notches.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut out: Vec<Option<(OnEdge, Point)>> = vec![None; notches.len()];
    let mut pending: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut i = ord.rightmost;
    for _ in 0..h.nv() {
        i = h.next(i);
        visits.add(1);
        let e = h.edge(i);
        if !e.dir().is_vertical() {
            let y = e.from.y;
            let keys: Vec<i64> = pending.range(e.x_min()..=e.x_max()).map(|(&x, _)| x).collect();
            for x in keys {
                let list = pending.get_mut(&x).unwrap();
                list.retain(|&k| {
                    let q = h.edge(notches[k]).to;
                    if y <= q.y {
                        return true;
                    }
                    let p = Point::new(x, y);
                    let nxt = h.next(i);
                    out[k] = Some(if p == e.to && h.dir(nxt) == Dir::Down {
                        (OnEdge { point: h.edge(nxt).to, edge: nxt }, p)
                    } else {
                        (OnEdge { point: p, edge: i }, p)
                    });
                    false
                });
                if list.is_empty() {
                    pending.remove(&x);
                }
            }
        }
        if let Some(&k) = slot.get(&i) {
            pending.entry(e.to.x).or_default().push(k);
        }
    }
    out.into_iter().enumerate().map(|(k, v)| v.ok_or(PartitionError::Unresolved(h.edge(notches[k]).to))).collect()
}

/// `QW_i` for every notch, in one anticlockwise pass from the topmost edge.
pub fn compute_qw_points(h: &Hole, notches: &[usize], visits: &mut Visits) -> Result<Vec<OnEdge>, PartitionError> {
    let ord = h.canonical_ordering()?;
    let slot: BTreeMap<usize, usize> = notches.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut out: Vec<Option<OnEdge>> = vec![None; notches.len()];
    let mut pending: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut i = ord.topmost;
    for _ in 0..=h.nv() {
        i = h.prev(i);
        visits.add(1);
        let e = h.edge(i);
        if let Some(&k) = slot.get(&i) {
            pending.entry(e.to.y).or_default().push(k);
        }
        if e.dir().is_vertical() {
            let x = e.from.x;
            let keys: Vec<i64> = pending.range(e.y_min()..=e.y_max()).map(|(&y, _)| y).collect();
            for y in keys {
                let list = pending.get_mut(&y).unwrap();
                list.retain(|&k| {
                    let q = h.edge(notches[k]).to;
                    if x <= q.x {
                        return true;
                    }
                    let p = Point::new(x, y);
                    // Reaching the far end of the wall where a floor edge at the same height
                    // continues leftward: the ray met that edge's left end first.
                    let before = h.prev(i);
                    out[k] = Some(if p == e.from && h.dir(before) == Dir::Right {
                        OnEdge { point: h.edge(before).from, edge: before }
                    } else {
                        OnEdge { point: p, edge: i }
                    });
                    false
                });
                if list.is_empty() {
                    pending.remove(&y);
                }
            }
        }
    }
    out.into_iter().enumerate().map(|(k, v)| v.ok_or(PartitionError::Unresolved(h.edge(notches[k]).to))).collect()
}

/// Anchors for every left notch of a BLS-hole, in canonical notch order.
pub fn notch_anchors(h: &Hole, visits: &mut Visits) -> Result<Vec<Anchor>, PartitionError> {
    let ord = h.canonical_ordering()?;
    let qn = compute_qn_points(h, &ord.notches, visits)?;
    let qw = compute_qw_points(h, &ord.notches, visits)?;
    Ok(ord
        .notches
        .iter()
        .zip(qn)
        .zip(qw)
        .map(|((&n, (qn, qn_star)), qw)| Anchor { q: OnEdge { point: h.edge(n).to, edge: h.next(n) }, qn, qn_star, qw })
        .collect())
}

/// Provenance of a boundary piece while cutting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    Boundary,
    /// The cut `chords[k]` walked from its first to its second endpoint.
    Forward(usize),
    Backward(usize),
}

/// Cut `h` along non-crossing axis-parallel chords whose endpoints lie on the boundary.
/// Returns each face with the pieces that bound it.
pub fn split_by_chords(h: &Hole, chords: &[(OnEdge, OnEdge)]) -> Result<Vec<(Hole, Vec<Piece>)>, PartitionError> {
    // Extra vertices per edge, ordered along the edge.
    let mut extra: Vec<Vec<Point>> = vec![Vec::new(); h.nv()];
    for &(a, b) in chords {
        for p in [a, b] {
            let e = h.edge(p.edge);
            if p.point != e.from && p.point != e.to {
                extra[p.edge].push(p.point);
            }
        }
    }
    let mut pieces: Vec<(Point, Point, Piece)> = Vec::with_capacity(h.nv() + 2 * chords.len() + 4 * chords.len());
    for (i, stops) in extra.iter_mut().enumerate() {
        let e = h.edge(i);
        let along = |p: &Point| (p.x - e.from.x).abs() + (p.y - e.from.y).abs();
        let mut stops = std::mem::take(stops);
        stops.sort_by_key(along);
        stops.dedup();
        let mut prev = e.from;
        for p in stops.into_iter().chain(std::iter::once(e.to)) {
            pieces.push((prev, p, Piece::Boundary));
            prev = p;
        }
    }
    for (k, &(a, b)) in chords.iter().enumerate() {
        pieces.push((a.point, b.point, Piece::Forward(k)));
        pieces.push((b.point, a.point, Piece::Backward(k)));
    }
    trace_cycles(&pieces)
        .into_iter()
        .map(|(pts, tags)| {
            Hole::new(&pts).map(|hole| (hole, tags)).map_err(|e| PartitionError::Boundary(e.to_string()))
        })
        .collect()
}

/// Close off every notch narrower than `w` with a horizontal cut. Returns the resulting
/// BLS-holes (just `h` when no notch is narrow).
pub fn qw_partition(h: &Hole, w: i64, visits: &mut Visits) -> Result<Vec<Hole>, PartitionError> {
    let anchors = notch_anchors(h, visits)?;
    let chords: Vec<(OnEdge, OnEdge)> = anchors.iter().filter(|a| a.width() < w).map(|a| (a.q, a.qw)).collect();
    if chords.is_empty() {
        return Ok(vec![h.clone()]);
    }
    visits.add(h.nv() as u64);
    Ok(split_by_chords(h, &chords)?.into_iter().map(|(hole, _)| hole).collect())
}

/// A nice piece of a vertical partition. `anchor` is the notch whose cut bounds the piece on
/// the right; `None` for the piece keeping the parent's rightmost edge.
#[derive(Clone, Debug)]
pub struct NicePart {
    pub hole: NiceHole,
    pub anchor: Option<Anchor>,
}

/// Cut a BLS-hole vertically at every notch into one nice hole per leftmost edge.
pub fn qn_partition(h: &Hole, anchors: &[Anchor], visits: &mut Visits) -> Result<Vec<NicePart>, PartitionError> {
    if anchors.is_empty() {
        return Ok(vec![NicePart { hole: NiceHole::new(h.clone())?, anchor: None }]);
    }
    let chords: Vec<(OnEdge, OnEdge)> = anchors.iter().map(|a| (a.q, a.qn)).collect();
    visits.add(h.nv() as u64);
    split_by_chords(h, &chords)?
        .into_iter()
        .map(|(hole, tags)| {
            // The piece walking a cut downward, from QN_i to Q_i, lies left of it.
            let anchor = tags.iter().find_map(|t| match *t {
                Piece::Backward(k) => Some(anchors[k]),
                _ => None,
            });
            Ok(NicePart { hole: NiceHole::new(hole)?, anchor })
        })
        .collect()
}

/// Glue onto a left piece the region between its cut and `QW_i`: the full box
/// `[x(Q), x(QW)] x [y(Q), y(QN)]`, or the L-shape under a falling corner inside that box.
pub fn expand_nice_hole(part: &NicePart, falling_corner: Option<Point>) -> Result<NiceHole, PartitionError> {
    let Some(a) = part.anchor else {
        return Ok(part.hole.clone());
    };
    let (q, qn, qw) = (a.q.point, a.qn.point, a.qw.point);
    let s = part.hole.hole();
    let iq = s.index_of(q).ok_or_else(|| PartitionError::Boundary(format!("{q} is not a vertex of its piece")))?;
    let mut path = vec![qn];
    match falling_corner {
        Some(c) if q.x < c.x && c.x < qw.x && q.y < c.y && c.y < qn.y => {
            path.extend([Point::new(c.x, qn.y), c, Point::new(qw.x, c.y)]);
        }
        _ => path.push(Point::new(qw.x, qn.y)),
    }
    path.push(Point::new(qw.x, q.y));
    let mut pts: Vec<Point> = Vec::with_capacity(s.nv() + path.len());
    for k in 0..s.nv() {
        let i = (iq + k) % s.nv();
        pts.push(s.vertex(i));
    }
    // pts now starts at Q and ends at the upper end of the cut edge.
    pts.extend(path);
    let hole = Hole::new(&pts).map_err(|e| PartitionError::Boundary(e.to_string()))?;
    Ok(NiceHole::new(hole)?)
}

fn sort_dedup(mut v: Vec<Point>) -> Vec<Point> {
    v.sort();
    v.dedup();
    v
}

/// Every feasible BL-stable position of `r` in a BLS-hole, sorted by `(x, y)`.
pub fn all_bl_locs_bls(h: &Hole, r: Rect, visits: &mut Visits) -> Result<Vec<Point>, PartitionError> {
    let mut out = Vec::new();
    for part in qw_partition(h, r.w, visits)? {
        let anchors = notch_anchors(&part, visits)?;
        let falling = (0..part.nv()).find(|&i| part.is_falling_corner(i)).map(|i| part.vertex(i));
        for piece in qn_partition(&part, &anchors, visits)? {
            let grown = expand_nice_hole(&piece, falling)?;
            let found = all_bl_locs(&grown, r, visits);
            match piece.anchor {
                // Positions starting right of the cut belong to the pieces over there.
                Some(a) => out.extend(found.into_iter().filter(|p| p.x < a.q.point.x)),
                None => out.extend(found),
            }
        }
    }
    Ok(sort_dedup(out))
}

/// Reference for cost comparisons only: the original scheme that skips the horizontal
/// cuts and lets the bar keep sliding past each vertical cut over the parent's boundary.
pub mod bench_only {
    use super::*;

    /// Same positions as [`all_bl_locs_bls`]; additionally charges, for every vertical cut,
    /// the parent edges met by a bar of width `w` sliding on past the cut below `QN_i`.
    pub fn flawed_all_bl_locs_bls(h: &Hole, r: Rect, visits: &mut Visits) -> Result<Vec<Point>, PartitionError> {
        let out = all_bl_locs_bls(h, r, visits)?;
        if r.w > h.bbox().1.x - h.bbox().0.x {
            return Ok(out);
        }
        let mut scratch = Visits::default();
        for a in notch_anchors(h, &mut scratch)? {
            let (x0, x1) = (a.q.point.x, a.q.point.x + r.w);
            let (y0, y1) = (a.q.point.y, a.qn.point.y);
            let met =
                h.edges().filter(|e| e.x_max() > x0 && e.x_min() < x1 && e.y_max() > y0 && e.y_min() < y1).count();
            visits.add(met as u64);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bls_hole, counterexample_hole, falling_corner_hole};
    use crate::oracle::grid_bl_stable_set;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn four_notch_anchors() {
        let h = bls_hole();
        let a = notch_anchors(&h, &mut Visits::default()).unwrap();
        let got: Vec<(Point, Point, Point)> = a.iter().map(|a| (a.q.point, a.qn.point, a.qw.point)).collect();
        assert_eq!(
            got,
            vec![(p(12, 4), p(12, 15), p(13, 4)), (p(5, 12), p(5, 15), p(24, 12)), (p(7, 16), p(7, 19), p(12, 16)),]
        );
        assert_eq!(a[0].qn_star, p(12, 19));
        assert_eq!(a[1].qn_star, p(5, 15));
    }

    #[test]
    fn counterexample_anchors() {
        let h = counterexample_hole();
        let a = notch_anchors(&h, &mut Visits::default()).unwrap();
        let got: Vec<(Point, Point, Point)> = a.iter().map(|a| (a.q.point, a.qn.point, a.qw.point)).collect();
        assert_eq!(got, vec![(p(11, 3), p(11, 8), p(15, 3)), (p(10, 6), p(10, 8), p(17, 6))]);
    }

    #[test]
    fn narrow_notch_gets_closed() {
        let h = counterexample_hole();
        let mut v = Visits::default();
        assert_eq!(qw_partition(&h, 4, &mut v).unwrap().len(), 1);
        assert_eq!(qw_partition(&h, 5, &mut v).unwrap().len(), 2);
        let parts = qw_partition(&h, 8, &mut v).unwrap();
        assert_eq!(parts.len(), 3);
        for part in &parts {
            part.validate_bls().unwrap();
        }
        let total: i128 = parts.iter().map(Hole::area2).sum();
        assert_eq!(total, h.area2());
    }

    #[test]
    fn vertical_partition_of_four_notch_hole() {
        let h = bls_hole();
        let mut v = Visits::default();
        let a = notch_anchors(&h, &mut v).unwrap();
        let parts = qn_partition(&h, &a, &mut v).unwrap();
        assert_eq!(parts.len(), 4);
        assert_eq!(parts.iter().filter(|p| p.anchor.is_none()).count(), 1);
        let total: i128 = parts.iter().map(|p| p.hole.hole().area2()).sum();
        assert_eq!(total, h.area2());
        let nv: usize = parts.iter().map(|p| p.hole.hole().nv()).sum();
        assert!(nv <= h.nv() + 4 * 3);
    }

    #[test]
    fn l_shaped_expansion_under_falling_corner() {
        let h = falling_corner_hole();
        let mut v = Visits::default();
        let a = notch_anchors(&h, &mut v).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!((a[0].q.point, a[0].qn.point, a[0].qw.point), (p(2, 3), p(2, 6), p(7, 3)));
        let parts = qn_partition(&h, &a, &mut v).unwrap();
        let left = parts.iter().find(|p| p.anchor.is_some()).unwrap();
        let grown = expand_nice_hole(left, Some(p(6, 5))).unwrap();
        // Left piece [0,2]x[3,6] plus [2,7]x[3,5] and [2,6]x[5,6].
        assert_eq!(grown.hole().area2(), 2 * (6 + 10 + 4));
    }

    #[test]
    fn qn_star_differs_when_ray_meets_falling_corner() {
        let h = bls_hole();
        let a = notch_anchors(&h, &mut Visits::default()).unwrap();
        assert_ne!(a[0].qn.point, a[0].qn_star);
        let r = Rect::new(3, 2);
        assert_eq!(all_bl_locs_bls(&h, r, &mut Visits::default()).unwrap(), grid_bl_stable_set(&h, r));
    }

    #[test]
    fn fixture_holes_match_grid() {
        for h in [bls_hole(), counterexample_hole(), falling_corner_hole()] {
            let (lo, hi) = h.bbox();
            for w in 1..=(hi.x - lo.x) {
                for ht in 1..=(hi.y - lo.y) {
                    let r = Rect::new(w, ht);
                    let fast = all_bl_locs_bls(&h, r, &mut Visits::default()).unwrap();
                    assert_eq!(fast, grid_bl_stable_set(&h, r), "{h:?} {r:?}");
                    let flawed = bench_only::flawed_all_bl_locs_bls(&h, r, &mut Visits::default()).unwrap();
                    assert_eq!(flawed, fast);
                }
            }
        }
    }
}
