//! Slow reference implementations. Nothing here reuses the fast path beyond `Point`, `Rect`
//! and the `Hole` container.

use crate::geometry::{Packing, Placement, Point, Rect};
use crate::hole::Hole;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    /// Only `x in {0} u {x_max}` and `y in {0} u {y_max}` are tried. A BL location cannot
    /// move left or down, so its left side touches the strip wall or a right side of a placed
    /// rectangle, and its bottom touches the floor or a top side.
    Candidates,
    /// Every integer position in `(y, x)` order.
    FullGrid,
}

fn collides(pk: &Packing, p: &Placement) -> bool {
    if p.x_min() < 0 || p.y_min() < 0 || p.x_max() > pk.strip_width {
        return true;
    }
    pk.placed()
        .any(|q| p.x_min() < q.x_max() && q.x_min() < p.x_max() && p.y_min() < q.y_max() && q.y_min() < p.y_max())
}

/// Lowest, then leftmost, feasible position for `r` in the unbounded strip.
pub fn oracle_bl_location(pk: &Packing, r: Rect, mode: OracleMode) -> Point {
    match mode {
        OracleMode::Candidates => {
            let mut xs: Vec<i64> = std::iter::once(0).chain(pk.placed().map(|q| q.x_max())).collect();
            let mut ys: Vec<i64> = std::iter::once(0).chain(pk.placed().map(|q| q.y_max())).collect();
            xs.sort_unstable();
            xs.dedup();
            ys.sort_unstable();
            ys.dedup();
            for &y in &ys {
                // Only rectangles meeting this horizontal band can block.
                let band: Vec<&Placement> = pk.placed().filter(|q| y < q.y_max() && q.y_min() < y + r.h).collect();
                for &x in &xs {
                    if x + r.w > pk.strip_width {
                        break;
                    }
                    if band.iter().all(|q| x + r.w <= q.x_min() || q.x_max() <= x) {
                        return Point::new(x, y);
                    }
                }
            }
            unreachable!("the top of the packing always admits a placement")
        }
        OracleMode::FullGrid => {
            let top = pk.placed().map(|q| q.y_max()).max().unwrap_or(0);
            for y in 0..=top {
                for x in 0..=pk.strip_width - r.w {
                    if !collides(pk, &Placement::new(r, Point::new(x, y))) {
                        return Point::new(x, y);
                    }
                }
            }
            unreachable!("the top of the packing always admits a placement")
        }
    }
}

/// BL packing of `rects` in input order.
pub fn oracle_pack(strip_width: i64, rects: &[Rect], mode: OracleMode) -> Packing {
    let mut pk = Packing::new(strip_width, rects.len());
    for (i, &r) in rects.iter().enumerate() {
        let at = oracle_bl_location(&pk, r, mode);
        pk.slots[i] = Some(Placement::new(r, at));
    }
    pk
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PackingError {
    #[error("rectangle {0} is not placed")]
    Unplaced(usize),
    #[error("rectangle {0} leaves the strip")]
    OutOfStrip(usize),
    #[error("rectangles {0} and {1} overlap")]
    Overlap(usize, usize),
}

/// Containment and pairwise non-overlap; reports the first violation.
pub fn validate_packing(pk: &Packing) -> Result<(), PackingError> {
    for (i, s) in pk.slots.iter().enumerate() {
        let p = s.ok_or(PackingError::Unplaced(i))?;
        if p.x_min() < 0 || p.y_min() < 0 || p.x_max() > pk.strip_width {
            return Err(PackingError::OutOfStrip(i));
        }
    }
    for i in 0..pk.slots.len() {
        for j in i + 1..pk.slots.len() {
            let (a, b) = (pk.slots[i].unwrap(), pk.slots[j].unwrap());
            if a.x_min() < b.x_max() && b.x_min() < a.x_max() && a.y_min() < b.y_max() && b.y_min() < a.y_max() {
                return Err(PackingError::Overlap(i, j));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StabilityError {
    #[error("rectangle {0} can move left")]
    Left(usize),
    #[error("rectangle {0} can move down")]
    Down(usize),
}

/// Every placed rectangle touches the wall or a neighbour on its left, and the floor or a
/// neighbour below.
pub fn validate_bl_stability(pk: &Packing) -> Result<(), StabilityError> {
    let placed: Vec<(usize, Placement)> = pk.slots.iter().enumerate().filter_map(|(i, s)| s.map(|p| (i, p))).collect();
    for &(i, p) in &placed {
        let left = p.x_min() == 0
            || placed
                .iter()
                .any(|&(j, q)| j != i && q.x_max() == p.x_min() && q.y_min() < p.y_max() && p.y_min() < q.y_max());
        if !left {
            return Err(StabilityError::Left(i));
        }
        let down = p.y_min() == 0
            || placed
                .iter()
                .any(|&(j, q)| j != i && q.y_max() == p.y_min() && q.x_min() < p.x_max() && p.x_min() < q.x_max());
        if !down {
            return Err(StabilityError::Down(i));
        }
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtractError {
    #[error("compressed grid of {0} cells exceeds the budget")]
    Budget(usize),
    #[error("traced boundary is not a valid hole: {0}")]
    Trace(String),
}

/// Cell budget for `extract_holes`.
pub const EXTRACT_CELL_BUDGET: usize = 4_000_000;

/// Free regions of `[0, W] x [0, ceiling]` as holes, by coordinate compression and boundary
/// tracing. Regions touching at a single corner come out as separate holes.
pub fn extract_holes(pk: &Packing, ceiling: i64) -> Result<Vec<Hole>, ExtractError> {
    let mut xs = vec![0, pk.strip_width];
    let mut ys = vec![0, ceiling];
    for p in pk.placed() {
        xs.extend([p.x_min(), p.x_max()]);
        ys.extend([p.y_min().min(ceiling), p.y_max().min(ceiling)]);
    }
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let (nx, ny) = (xs.len() - 1, ys.len() - 1);
    if nx * ny > EXTRACT_CELL_BUDGET {
        return Err(ExtractError::Budget(nx * ny));
    }
    let xi: HashMap<i64, usize> = xs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let yi: HashMap<i64, usize> = ys.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let mut free = vec![true; nx * ny];
    for p in pk.placed() {
        if p.y_min() >= ceiling {
            continue;
        }
        for cx in xi[&p.x_min()]..xi[&p.x_max()] {
            for cy in yi[&p.y_min()]..yi[&p.y_max().min(ceiling)] {
                free[cy * nx + cx] = false;
            }
        }
    }
    let is_free = |cx: isize, cy: isize| -> bool {
        cx >= 0 && cy >= 0 && (cx as usize) < nx && (cy as usize) < ny && free[cy as usize * nx + cx as usize]
    };
    // Directed sides of free cells facing non-free space, free side on the right.
    let mut out_edges: HashMap<Point, Vec<Point>> = HashMap::new();
    for cy in 0..ny {
        for cx in 0..nx {
            if !free[cy * nx + cx] {
                continue;
            }
            let (x0, x1, y0, y1) = (xs[cx], xs[cx + 1], ys[cy], ys[cy + 1]);
            let (icx, icy) = (cx as isize, cy as isize);
            let mut emit = |a: Point, b: Point| {
                out_edges.entry(a).or_default().push(b);
            };
            if !is_free(icx - 1, icy) {
                emit(Point::new(x0, y0), Point::new(x0, y1));
            }
            if !is_free(icx, icy + 1) {
                emit(Point::new(x0, y1), Point::new(x1, y1));
            }
            if !is_free(icx + 1, icy) {
                emit(Point::new(x1, y1), Point::new(x1, y0));
            }
            if !is_free(icx, icy - 1) {
                emit(Point::new(x1, y0), Point::new(x0, y0));
            }
        }
    }
    let mut holes = Vec::new();
    let mut starts: Vec<Point> = out_edges.keys().copied().collect();
    starts.sort();
    for s in starts {
        while let Some(first) = out_edges.get_mut(&s).and_then(|v| v.pop()) {
            let mut cycle = vec![s];
            let (mut prev, mut cur) = (s, first);
            // Starts are visited in sorted order, so `s` is the smallest remaining vertex and
            // cannot be a pinch point; the first return to it closes the cycle.
            while cur != s {
                cycle.push(cur);
                let outs = out_edges.get_mut(&cur).expect("boundary is closed");
                let k = pick_turn(prev, cur, outs);
                let next = outs.swap_remove(k);
                prev = cur;
                cur = next;
            }
            holes.push(Hole::new(&merge_collinear(cycle)).map_err(|e| ExtractError::Trace(e.to_string()))?);
        }
    }
    Ok(holes)
}

/// Among outgoing steps at `cur`, prefer a right turn, then straight, then a left turn.
fn pick_turn(prev: Point, cur: Point, outs: &[Point]) -> usize {
    let din = ((cur.x - prev.x).signum(), (cur.y - prev.y).signum());
    let rank = |to: &Point| {
        let dout = ((to.x - cur.x).signum(), (to.y - cur.y).signum());
        let cross = din.0 * dout.1 - din.1 * dout.0;
        match cross {
            c if c < 0 => 0,
            0 => 1,
            _ => 2,
        }
    };
    (0..outs.len()).min_by_key(|&k| rank(&outs[k])).expect("boundary is closed")
}

fn merge_collinear(cycle: Vec<Point>) -> Vec<Point> {
    let n = cycle.len();
    (0..n)
        .filter(|&i| {
            let (a, b, c) = (cycle[(i + n - 1) % n], cycle[i], cycle[(i + 1) % n]);
            !((a.x == b.x && b.x == c.x) || (a.y == b.y && b.y == c.y))
        })
        .map(|i| cycle[i])
        .collect()
}

/// Even-odd test for the point `(x2 / 2, y2 / 2)`; callers pass odd doubled coordinates so
/// the probe never lies on the boundary.
pub fn point_in_polygon2(pts: &[Point], x2: i64, y2: i64) -> bool {
    let n = pts.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        if a.x == b.x {
            let (lo, hi) = (2 * a.y.min(b.y), 2 * a.y.max(b.y));
            if 2 * a.x > x2 && lo < y2 && y2 < hi {
                inside = !inside;
            }
        }
    }
    inside
}

/// Integer positions in `h` where `r` fits and cannot move left or down without leaving `h`,
/// sorted by `(x, y)`.
pub fn grid_bl_stable_set(h: &Hole, r: Rect) -> Vec<Point> {
    let pts = h.vertices();
    let x0 = pts.iter().map(|p| p.x).min().unwrap();
    let x1 = pts.iter().map(|p| p.x).max().unwrap();
    let y0 = pts.iter().map(|p| p.y).min().unwrap();
    let y1 = pts.iter().map(|p| p.y).max().unwrap();
    let (nx, ny) = ((x1 - x0) as usize, (y1 - y0) as usize);
    // Prefix sums of outside cells for O(1) rectangle queries.
    let mut pre = vec![0i64; (nx + 1) * (ny + 1)];
    for cy in 0..ny {
        for cx in 0..nx {
            let inside = point_in_polygon2(pts, 2 * (x0 + cx as i64) + 1, 2 * (y0 + cy as i64) + 1);
            let v = i64::from(!inside);
            pre[(cy + 1) * (nx + 1) + cx + 1] =
                v + pre[cy * (nx + 1) + cx + 1] + pre[(cy + 1) * (nx + 1) + cx] - pre[cy * (nx + 1) + cx];
        }
    }
    // Number of outside cells in columns [cx0, cx1) x rows [cy0, cy1), all in box coordinates.
    let outside = |cx0: i64, cy0: i64, cx1: i64, cy1: i64| -> i64 {
        let (a, b, c, d) = (cx0 as usize, cy0 as usize, cx1 as usize, cy1 as usize);
        pre[d * (nx + 1) + c] - pre[b * (nx + 1) + c] - pre[d * (nx + 1) + a] + pre[b * (nx + 1) + a]
    };
    let mut out = Vec::new();
    for cx in 0..=(nx as i64 - r.w) {
        for cy in 0..=(ny as i64 - r.h) {
            if outside(cx, cy, cx + r.w, cy + r.h) != 0 {
                continue;
            }
            let left = cx == 0 || outside(cx - 1, cy, cx, cy + r.h) != 0;
            let down = cy == 0 || outside(cx, cy - 1, cx + r.w, cy) != 0;
            if left && down {
                out.push(Point::new(x0 + cx, y0 + cy));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_packing_locations() {
        let pk = Packing::new(6, 0);
        assert_eq!(oracle_bl_location(&pk, Rect::new(2, 2), OracleMode::Candidates), Point::new(0, 0));
        assert_eq!(oracle_bl_location(&pk, Rect::new(2, 2), OracleMode::FullGrid), Point::new(0, 0));
    }

    #[test]
    fn second_rect_goes_right() {
        let pk = Packing::from_placements(6, vec![Placement::at(0, 0, 2, 1)]);
        assert_eq!(oracle_bl_location(&pk, Rect::new(2, 2), OracleMode::Candidates), Point::new(2, 0));
    }

    #[test]
    fn validators_flag_problems() {
        let ok = Packing::from_placements(5, vec![Placement::at(0, 0, 5, 2), Placement::at(0, 2, 5, 2)]);
        assert_eq!(validate_packing(&ok), Ok(()));
        assert_eq!(validate_bl_stability(&ok), Ok(()));
        let bad = Packing::from_placements(5, vec![Placement::at(0, 0, 3, 3), Placement::at(1, 1, 3, 3)]);
        assert_eq!(validate_packing(&bad), Err(PackingError::Overlap(0, 1)));
        let floating = Packing::from_placements(5, vec![Placement::at(1, 1, 1, 1)]);
        assert_eq!(validate_bl_stability(&floating), Err(StabilityError::Left(0)));
        let floating = Packing::from_placements(5, vec![Placement::at(0, 1, 1, 1)]);
        assert_eq!(validate_bl_stability(&floating), Err(StabilityError::Down(0)));
    }

    #[test]
    fn empty_packing_is_one_hole() {
        let holes = extract_holes(&Packing::new(5, 0), 7).unwrap();
        assert_eq!(holes.len(), 1);
        assert_eq!(holes[0].canonical_cycle(), Hole::rectangle(0, 0, 5, 7).canonical_cycle());
    }

    #[test]
    fn corner_touching_regions_split() {
        // Two free squares meeting at (2,2).
        let pk = Packing::from_placements(4, vec![Placement::at(2, 0, 2, 2), Placement::at(0, 2, 2, 2)]);
        let holes = extract_holes(&pk, 4).unwrap();
        assert_eq!(holes.len(), 2);
        assert!(holes.iter().all(|h| h.nv() == 4));
    }

    #[test]
    fn grid_set_in_rectangle() {
        let h = Hole::rectangle(0, 0, 10, 5);
        assert_eq!(grid_bl_stable_set(&h, Rect::new(3, 4)), vec![Point::new(0, 0)]);
        assert!(grid_bl_stable_set(&h, Rect::new(11, 1)).is_empty());
    }

    #[test]
    fn modes_agree_on_small_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let w = rng.gen_range(3..=12);
            let rects: Vec<Rect> =
                (0..rng.gen_range(1..=8)).map(|_| Rect::new(rng.gen_range(1..=w), rng.gen_range(1..=5))).collect();
            assert_eq!(oracle_pack(w, &rects, OracleMode::Candidates), oracle_pack(w, &rects, OracleMode::FullGrid));
        }
    }
}
