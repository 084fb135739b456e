//! The hole store and the BL driver.

use crate::geometry::{packing_height, Packing, Placement, Point, Rect};
use crate::hole::{trace_cycles, Hole};
use crate::io::Instance;
use crate::partition::{all_bl_locs_bls, bench_only::flawed_all_bl_locs_bls, PartitionError};
use crate::scan::Visits;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PackError {
    #[error("instance has no rectangles")]
    Empty,
    #[error("total height overflows")]
    HeightOverflow,
    #[error("rectangle {0} is wider than the strip")]
    TooWide(usize),
    #[error("no hole admits rectangle {0}")]
    NoLocation(usize),
    #[error("hole search failed: {0}")]
    Partition(#[from] PartitionError),
    #[error("splicing rectangle at {0} failed: {1}")]
    Splice(Point, String),
}

/// How the per-hole searches of one placement are scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchMode {
    Sequential,
    /// Holes are searched on the rayon pool. Without the `parallel` feature this is the
    /// same as `Sequential`.
    #[default]
    Parallel,
}

/// Live holes of a partial packing inside `[0, W] x [0, ceiling]`.
#[derive(Clone, Debug)]
pub struct HoleStore {
    pub strip_width: i64,
    pub ceiling: i64,
    holes: Vec<Hole>,
    placed: usize,
}

/// Result of searching one hole.
#[derive(Clone, Copy, Debug, Default)]
struct HoleHit {
    best: Option<Point>,
    visits: u64,
    candidates: usize,
    examined: usize,
}

impl HoleHit {
    fn join(self, other: HoleHit) -> HoleHit {
        let best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(if b.yx() < a.yx() { b } else { a }),
            (a, b) => a.or(b),
        };
        HoleHit {
            best,
            visits: self.visits + other.visits,
            candidates: self.candidates + other.candidates,
            examined: self.examined + other.examined,
        }
    }
}

/// Work done for one placement.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PlacementStats {
    pub at: Point,
    pub holes_examined: usize,
    pub edges_visited: u64,
    pub candidates: usize,
    pub live_holes: usize,
    pub live_vertices: usize,
}

impl HoleStore {
    /// One rectangular hole of height `sum h`.
    pub fn init(strip_width: i64, rects: &[Rect]) -> Result<HoleStore, PackError> {
        if rects.is_empty() {
            return Err(PackError::Empty);
        }
        if let Some(i) = rects.iter().position(|r| r.w > strip_width) {
            return Err(PackError::TooWide(i));
        }
        let ceiling = rects.iter().try_fold(0i64, |acc, r| acc.checked_add(r.h)).ok_or(PackError::HeightOverflow)?;
        Ok(HoleStore { strip_width, ceiling, holes: vec![Hole::rectangle(0, 0, strip_width, ceiling)], placed: 0 })
    }

    pub fn holes(&self) -> &[Hole] {
        &self.holes
    }

    pub fn placed(&self) -> usize {
        self.placed
    }

    pub fn total_vertices(&self) -> usize {
        self.holes.iter().map(Hole::nv).sum()
    }

    fn search_hole(h: &Hole, r: Rect, search: HoleSearch) -> Result<HoleHit, PartitionError> {
        let (lo, hi) = h.bbox();
        if hi.x - lo.x < r.w || hi.y - lo.y < r.h {
            return Ok(HoleHit::default());
        }
        let mut v = Visits::default();
        let found = search(h, r, &mut v)?;
        Ok(HoleHit {
            best: found.iter().copied().min_by_key(|p| p.yx()),
            visits: v.0,
            candidates: found.len(),
            examined: 1,
        })
    }

    /// Lexicographically smallest `(y, x)` over the BL-stable positions of every hole, with
    /// the index of the hole it lies in.
    pub fn find_bl_location(
        &self,
        r: Rect,
        mode: SearchMode,
    ) -> Result<Option<(usize, Point, PlacementStats)>, PackError> {
        self.find_with(r, mode, all_bl_locs_bls)
    }

    fn find_with(
        &self,
        r: Rect,
        mode: SearchMode,
        search: HoleSearch,
    ) -> Result<Option<(usize, Point, PlacementStats)>, PackError> {
        let hits: Vec<HoleHit> = match mode {
            SearchMode::Sequential => {
                self.holes.iter().map(|h| Self::search_hole(h, r, search)).collect::<Result<_, _>>()?
            }
            SearchMode::Parallel => par_search(&self.holes, r, search)?,
        };
        let total = hits.iter().copied().fold(HoleHit::default(), HoleHit::join);
        let Some(best) = total.best else { return Ok(None) };
        let idx = hits.iter().position(|h| h.best == Some(best)).expect("best comes from some hole");
        let stats = PlacementStats {
            at: best,
            holes_examined: total.examined,
            edges_visited: total.visits,
            candidates: total.candidates,
            live_holes: 0,
            live_vertices: 0,
        };
        Ok(Some((idx, best, stats)))
    }

    /// Remove the rectangle `r` at `at` from hole `idx`, replacing it by what is left over.
    pub fn place_and_update(&mut self, idx: usize, r: Rect, at: Point) -> Result<(), PackError> {
        let rest = splice(&self.holes[idx], &Placement::new(r, at)).map_err(|e| PackError::Splice(at, e))?;
        self.holes.swap_remove(idx);
        self.holes.extend(rest);
        self.placed += 1;
        Ok(())
    }
}

type HoleSearch = fn(&Hole, Rect, &mut Visits) -> Result<Vec<Point>, PartitionError>;

#[cfg(feature = "parallel")]
fn par_search(holes: &[Hole], r: Rect, search: HoleSearch) -> Result<Vec<HoleHit>, PartitionError> {
    use rayon::prelude::*;
    holes.par_iter().map(|h| HoleStore::search_hole(h, r, search)).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_search(holes: &[Hole], r: Rect, search: HoleSearch) -> Result<Vec<HoleHit>, PartitionError> {
    holes.iter().map(|h| HoleStore::search_hole(h, r, search)).collect()
}

/// Boundary of `h` minus the closed rectangle `p`, which must lie inside `h`.
///
/// Both boundaries are cut at each other's vertices; pieces running along the same segment
/// in opposite directions cancel, and what remains is relinked into cycles.
pub fn splice(h: &Hole, p: &Placement) -> Result<Vec<Hole>, String> {
    let corners = [
        Point::new(p.x_min(), p.y_min()),
        Point::new(p.x_max(), p.y_min()),
        Point::new(p.x_max(), p.y_max()),
        Point::new(p.x_min(), p.y_max()),
    ];
    let strictly_inside = |a: Point, b: Point, q: Point| {
        if a.x == b.x {
            q.x == a.x && q.y > a.y.min(b.y) && q.y < a.y.max(b.y)
        } else {
            q.y == a.y && q.x > a.x.min(b.x) && q.x < a.x.max(b.x)
        }
    };
    let cut = |a: Point, b: Point, stops: &mut Vec<Point>, out: &mut Vec<(Point, Point)>| {
        stops.sort_by_key(|q| (q.x - a.x).abs() + (q.y - a.y).abs());
        stops.dedup();
        let mut prev = a;
        for &q in stops.iter().chain(std::iter::once(&b)) {
            out.push((prev, q));
            prev = q;
        }
    };
    let mut hole_pieces: Vec<(Point, Point)> = Vec::with_capacity(h.nv() + 8);
    for e in h.edges() {
        let mut stops: Vec<Point> = corners.iter().copied().filter(|&c| strictly_inside(e.from, e.to, c)).collect();
        cut(e.from, e.to, &mut stops, &mut hole_pieces);
    }
    let mut rect_pieces: Vec<(Point, Point)> = Vec::new();
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        let mut stops: Vec<Point> = h.vertices().iter().copied().filter(|&q| strictly_inside(a, b, q)).collect();
        cut(a, b, &mut stops, &mut rect_pieces);
    }
    let mut hole_set: std::collections::HashMap<(Point, Point), usize> =
        hole_pieces.iter().enumerate().map(|(i, &(a, b))| ((a, b), i)).collect();
    let mut kept_rect = Vec::new();
    for &(a, b) in &rect_pieces {
        if hole_set.remove(&(b, a)).is_none() {
            kept_rect.push((a, b));
        }
    }
    let mut keep = vec![false; hole_pieces.len()];
    for &i in hole_set.values() {
        keep[i] = true;
    }
    let pieces: Vec<(Point, Point, ())> = hole_pieces
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(&(a, b), _)| (a, b, ()))
        .chain(kept_rect.into_iter().map(|(a, b)| (a, b, ())))
        .collect();
    trace_cycles(&pieces).into_iter().map(|(pts, _)| Hole::new(&pts).map_err(|e| e.to_string())).collect()
}

/// Output of [`pack`].
#[derive(Clone, Debug)]
pub struct PackReport {
    pub packing: Packing,
    pub height: i64,
    pub placements: Vec<PlacementStats>,
    pub wall: Duration,
}

impl PackReport {
    pub fn total_visits(&self) -> u64 {
        self.placements.iter().map(|p| p.edges_visited).sum()
    }
}

/// BL packing via the hole store, calling `observe` after every placement.
pub fn pack_observed(
    inst: &Instance,
    mode: SearchMode,
    observe: impl FnMut(&HoleStore, &Packing),
) -> Result<PackReport, PackError> {
    drive(inst, mode, all_bl_locs_bls, observe)
}

fn drive(
    inst: &Instance,
    mode: SearchMode,
    search: HoleSearch,
    mut observe: impl FnMut(&HoleStore, &Packing),
) -> Result<PackReport, PackError> {
    let start = Instant::now();
    let mut store = HoleStore::init(inst.strip_width, &inst.rects)?;
    let mut packing = Packing::new(inst.strip_width, inst.rects.len());
    let mut placements = Vec::with_capacity(inst.rects.len());
    for (i, &r) in inst.rects.iter().enumerate() {
        let (idx, at, mut stats) = store.find_with(r, mode, search)?.ok_or(PackError::NoLocation(i))?;
        store.place_and_update(idx, r, at)?;
        packing.slots[i] = Some(Placement::new(r, at));
        stats.live_holes = store.holes.len();
        stats.live_vertices = store.total_vertices();
        placements.push(stats);
        observe(&store, &packing);
    }
    Ok(PackReport { height: packing_height(&packing), packing, placements, wall: start.elapsed() })
}

pub fn pack_with(inst: &Instance, mode: SearchMode) -> Result<PackReport, PackError> {
    pack_observed(inst, mode, |_, _| {})
}

/// BL packing of the instance in input order.
pub fn pack(inst: &Instance) -> Result<PackReport, PackError> {
    pack_with(inst, SearchMode::default())
}

/// Drivers kept only to measure the cost of the uncorrected per-hole search.
pub mod bench_only {
    use super::*;

    /// Same packing as [`pack_with`], with every hole searched by the flawed variant.
    pub fn pack_flawed(inst: &Instance, mode: SearchMode) -> Result<PackReport, PackError> {
        drive(inst, mode, flawed_all_bl_locs_bls, |_, _| {})
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{three_hole_layout, THREE_HOLE_STRIP_WIDTH};
    use crate::oracle::extract_holes;

    fn cycles(holes: &[Hole]) -> Vec<Vec<Point>> {
        let mut v: Vec<Vec<Point>> = holes.iter().map(Hole::canonical_cycle).collect();
        v.sort();
        v
    }

    #[test]
    fn store_starts_with_one_hole() {
        let s = HoleStore::init(5, &[Rect::new(2, 3), Rect::new(5, 4)]).unwrap();
        assert_eq!(s.holes().len(), 1);
        assert_eq!(s.ceiling, 7);
        assert_eq!(s.total_vertices(), 4);
        assert_eq!(HoleStore::init(5, &[]).unwrap_err(), PackError::Empty);
    }

    #[test]
    fn filling_a_hole_removes_it() {
        let h = Hole::rectangle(0, 0, 4, 3);
        assert!(splice(&h, &Placement::at(0, 0, 4, 3)).unwrap().is_empty());
    }

    #[test]
    fn splitting_a_wide_hole() {
        // A bar across the middle of a tall hole leaves a region below and one above.
        let h = Hole::rectangle(0, 0, 6, 6);
        let rest = splice(&h, &Placement::at(0, 2, 6, 1)).unwrap();
        assert_eq!(rest.len(), 2);
        let pk = Packing::from_placements(6, vec![Placement::at(0, 2, 6, 1)]);
        assert_eq!(cycles(&rest), cycles(&extract_holes(&pk, 6).unwrap()));
    }

    #[test]
    fn second_rectangle_location() {
        let inst = Instance::new(6, vec![Rect::new(2, 1), Rect::new(2, 2)]).unwrap();
        let rep = pack(&inst).unwrap();
        assert_eq!(rep.packing.origins(), vec![Point::new(0, 0), Point::new(2, 0)]);
    }

    #[test]
    fn three_hole_layout_replayed() {
        let layout = three_hole_layout();
        let inst = Instance::new(THREE_HOLE_STRIP_WIDTH, layout.iter().map(|p| p.rect).collect()).unwrap();
        let mut store = HoleStore::init(inst.strip_width, &inst.rects).unwrap();
        for p in &layout {
            let (idx, at, _) = store.find_bl_location(p.rect, SearchMode::Sequential).unwrap().unwrap();
            assert_eq!(at, p.origin);
            store.place_and_update(idx, p.rect, at).unwrap();
        }
        // Two enclosed holes plus the open region under the ceiling.
        assert_eq!(store.holes().len(), 3);
        let pk = Packing::from_placements(inst.strip_width, layout);
        assert_eq!(cycles(store.holes()), cycles(&extract_holes(&pk, store.ceiling).unwrap()));
    }

    #[test]
    fn modes_agree() {
        let inst = Instance::new(10, vec![Rect::new(3, 2), Rect::new(4, 5), Rect::new(2, 2), Rect::new(6, 1)]).unwrap();
        let a = pack_with(&inst, SearchMode::Sequential).unwrap();
        let b = pack_with(&inst, SearchMode::Parallel).unwrap();
        assert_eq!(a.packing, b.packing);
        assert_eq!(a.placements, b.placements);
    }
}
