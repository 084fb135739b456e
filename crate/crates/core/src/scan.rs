//! Sweeps of a horizontal bar of width `w` over a nice hole.
//!
//! `f(p)` is the lowest height at which the bar `[p, p + w]` clears the floor, `g(p)` the
//! highest at which it stays under the ceiling. Both are step functions of `p`; the sweeps
//! return them as candidate staircases (only the change points), and the placing step
//! combines the two into the set of BL-stable positions of a `w x h` rectangle.

use crate::geometry::{Point, Rect};
use crate::hole::{EdgeClass, Hole};
use std::collections::VecDeque;
use thiserror::Error;

/// Running count of boundary edges and staircase points touched by the sweeps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Visits(pub u64);

impl Visits {
    pub fn add(&mut self, n: u64) {
        self.0 += n;
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NiceError {
    #[error("not a BLS-hole: {0}")]
    NotBls(#[from] crate::hole::BlsViolation),
    #[error("expected one leftmost and one rightmost edge, found {0} and {1}")]
    MostEdges(usize, usize),
    #[error("edge {0} is a left notch")]
    LeftNotch(usize),
}

/// A horizontal boundary edge reduced to its span and height.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub l: i64,
    pub r: i64,
    pub y: i64,
}

/// BLS-hole with exactly one leftmost edge, one rightmost edge and no left notch.
#[derive(Clone, Debug)]
pub struct NiceHole {
    hole: Hole,
    left: usize,
    right: usize,
}

impl NiceHole {
    pub fn new(hole: Hole) -> Result<NiceHole, NiceError> {
        hole.validate_bls()?;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for i in 0..hole.nv() {
            match hole.classify_edge(i) {
                EdgeClass::Leftmost => left.push(i),
                EdgeClass::Rightmost => right.push(i),
                EdgeClass::LeftNotch => return Err(NiceError::LeftNotch(i)),
                _ => {}
            }
        }
        if left.len() != 1 || right.len() != 1 {
            return Err(NiceError::MostEdges(left.len(), right.len()));
        }
        Ok(NiceHole { left: left[0], right: right[0], hole })
    }

    pub fn hole(&self) -> &Hole {
        &self.hole
    }

    pub fn into_hole(self) -> Hole {
        self.hole
    }

    pub fn x_left(&self) -> i64 {
        self.hole.edge(self.left).from.x
    }

    pub fn x_right(&self) -> i64 {
        self.hole.edge(self.right).from.x
    }

    /// Horizontal edges of the lower boundary, anticlockwise from `L` to `R` (left to right).
    pub fn floor(&self) -> Vec<Span> {
        let h = &self.hole;
        let mut out = Vec::new();
        let mut i = h.prev(self.left);
        while i != self.right {
            let e = h.edge(i);
            if !e.dir().is_vertical() {
                out.push(Span { l: e.x_min(), r: e.x_max(), y: e.from.y });
            }
            i = h.prev(i);
        }
        out
    }

    /// Horizontal edges of the upper boundary, clockwise from `L` to `R` (left to right).
    pub fn ceiling(&self) -> Vec<Span> {
        let h = &self.hole;
        let mut out = Vec::new();
        let mut i = h.next(self.left);
        while i != self.right {
            let e = h.edge(i);
            if !e.dir().is_vertical() {
                out.push(Span { l: e.x_min(), r: e.x_max(), y: e.from.y });
            }
            i = h.next(i);
        }
        out
    }

    /// The unique falling corner, if any.
    pub fn falling_corner(&self) -> Option<Point> {
        (0..self.hole.nv()).find(|&i| self.hole.is_falling_corner(i)).map(|i| self.hole.vertex(i))
    }
}

/// `SETUP(i, j)` over the floor: edges `e_{i+1} ..= e_j` scanned right to left, keeping each
/// edge strictly higher than the current front. Floor edge `e_k` (1-based) is `floor[k - 1]`.
pub fn setup(floor: &[Span], i: usize, j: usize) -> VecDeque<usize> {
    let mut q: VecDeque<usize> = VecDeque::new();
    for k in (i + 1..=j).rev() {
        let e = k - 1;
        if q.front().is_none_or(|&f| floor[f].y < floor[e].y) {
            q.push_front(e);
        }
    }
    q
}

/// `MERGE(Q, Q')`: drop edges at the back of `Q` not higher than the front of `Q'`, then append.
pub fn merge(floor: &[Span], mut q: VecDeque<usize>, q2: VecDeque<usize>) -> VecDeque<usize> {
    if let Some(&f) = q2.front() {
        while q.back().is_some_and(|&b| floor[b].y <= floor[f].y) {
            q.pop_back();
        }
    }
    q.extend(q2);
    q
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Bottom,
    Top,
}

/// Change points of `f` (bottom) or `g` (top) as ordered point pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub side: Side,
    pub w: i64,
    pub points: Vec<Point>,
}

impl Staircase {
    /// Value at an integer `p` inside the staircase domain.
    pub fn eval(&self, p: i64) -> i64 {
        let mut cur = Cursor::new(self);
        cur.eval(p)
    }

    pub fn x_range(&self) -> (i64, i64) {
        (self.points[0].x, self.points[self.points.len() - 1].x)
    }
}

/// Forward-only evaluator; queries must come with non-decreasing `p`.
struct Cursor<'a> {
    s: &'a Staircase,
    i: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a Staircase) -> Self {
        Cursor { s, i: 0 }
    }

    fn eval(&mut self, p: i64) -> i64 {
        let pts = &self.s.points;
        // Advance past every group of points strictly left of p.
        while self.i < pts.len() && pts[self.i].x < p {
            self.i += 1;
        }
        if self.i < pts.len() && pts[self.i].x == p {
            let mut best = pts[self.i].y;
            let mut k = self.i;
            while k < pts.len() && pts[k].x == p {
                best = match self.s.side {
                    Side::Bottom => best.min(pts[k].y),
                    Side::Top => best.max(pts[k].y),
                };
                k += 1;
            }
            best
        } else {
            pts[self.i - 1].y
        }
    }
}

/// Sliding-window extreme of `spans` over the open window `(p, p + w)` for every integer
/// `p` in `[x0, x1]`, as a list of `(first p, value)` runs with distinct consecutive values.
fn window_extreme(spans: &[Span], w: i64, x0: i64, x1: i64, side: Side, visits: &mut Visits) -> Vec<(i64, i64)> {
    // For a floor the bar rests on the highest span in the window; under a ceiling it is
    // held down by the lowest.
    let dominated = |a: i64, b: i64| match side {
        Side::Bottom => a <= b,
        Side::Top => a >= b,
    };
    let mut q: VecDeque<usize> = VecDeque::new();
    let mut enter = 0;
    let mut runs: Vec<(i64, i64)> = Vec::new();
    let mut p = x0;
    loop {
        while enter < spans.len() && spans[enter].l < p + w {
            visits.add(1);
            if spans[enter].r > p {
                // Merge with the one-edge deque of the entering span.
                let y = spans[enter].y;
                while q.back().is_some_and(|&b| dominated(spans[b].y, y)) {
                    q.pop_back();
                }
                q.push_back(enter);
            }
            enter += 1;
        }
        while q.front().is_some_and(|&f| spans[f].r <= p) {
            q.pop_front();
        }
        let v = spans[*q.front().expect("window always meets the boundary")].y;
        if runs.last().is_none_or(|&(_, last)| last != v) {
            runs.push((p, v));
        }
        // Next integer at which the window content changes.
        let next_enter = spans.get(enter).map(|s| s.l - w + 1).unwrap_or(i64::MAX);
        let next_leave = q.front().map(|&f| spans[f].r).unwrap_or(i64::MAX);
        let next = next_enter.min(next_leave).max(p + 1);
        if next > x1 {
            break;
        }
        p = next;
    }
    runs
}

/// Turn runs of a step function on `[x0, x1]` into the ordered change-point encoding.
///
/// A change that makes the bar worse (floor rises, ceiling drops) at `p` is recorded as a
/// pair at `p - 1`; one that makes it better is recorded at `p`. At a shared `x` the
/// improving pair therefore comes first, which keeps `x(c_{2i-1}) = x(c_{2i})` and
/// `y(c_{2i}) = y(c_{2i+1})`.
fn encode(runs: &[(i64, i64)], x1: i64, side: Side, w: i64) -> Staircase {
    let worse = |old: i64, new: i64| match side {
        Side::Bottom => new > old,
        Side::Top => new < old,
    };
    let mut pts = vec![Point::new(runs[0].0, runs[0].1)];
    for win in runs.windows(2) {
        let (_, old) = win[0];
        let (p, new) = win[1];
        let at = if worse(old, new) { p - 1 } else { p };
        pts.push(Point::new(at, old));
        pts.push(Point::new(at, new));
    }
    pts.push(Point::new(x1, runs[runs.len() - 1].1));
    Staircase { side, w, points: pts }
}

/// Set `C`: change points of `f` over `p` in `[x(L), x(R) - w]`.
pub fn bottom_function(s: &NiceHole, w: i64, visits: &mut Visits) -> Staircase {
    let (x0, x1) = (s.x_left(), s.x_right() - w);
    let floor = s.floor();
    let runs = window_extreme(&floor, w, x0, x1, Side::Bottom, visits);
    encode(&runs, x1, Side::Bottom, w)
}

/// Set `D`: change points of `g` over `p` in `[x(L), x(R) - w]`.
pub fn top_function(s: &NiceHole, w: i64, visits: &mut Visits) -> Staircase {
    let (x0, x1) = (s.x_left(), s.x_right() - w);
    let ceiling = s.ceiling();
    let runs = window_extreme(&ceiling, w, x0, x1, Side::Top, visits);
    encode(&runs, x1, Side::Top, w)
}

/// All BL-stable positions of `r` given the two staircases for `w(r)`.
///
/// Every such position has its `x` among the `x`s of `C` or `D`, so the two sorted point
/// lists are merged and each distinct `x` is tested directly.
pub fn placing_function(s: &NiceHole, r: Rect, c: &Staircase, d: &Staircase, visits: &mut Visits) -> Vec<Point> {
    let x_left = s.x_left();
    let (cp, dp) = (&c.points, &d.points);
    let mut fc = Cursor::new(c);
    let mut gc = Cursor::new(d);
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    let mut last_x = None;
    while i < cp.len() || j < dp.len() {
        let x = match (cp.get(i), dp.get(j)) {
            (Some(a), Some(b)) => a.x.min(b.x),
            (Some(a), None) => a.x,
            (None, Some(b)) => b.x,
            (None, None) => unreachable!(),
        };
        while i < cp.len() && cp[i].x == x {
            i += 1;
            visits.add(1);
        }
        while j < dp.len() && dp[j].x == x {
            j += 1;
            visits.add(1);
        }
        if last_x == Some(x) {
            continue;
        }
        last_x = Some(x);
        let (f_prev, g_prev) = if x > x_left { (Some(fc.eval(x - 1)), Some(gc.eval(x - 1))) } else { (None, None) };
        let (f, g) = (fc.eval(x), gc.eval(x));
        if g - f < r.h {
            continue;
        }
        let stable = match (f_prev, g_prev) {
            (None, _) | (_, None) => true,
            (Some(fp), Some(gp)) => fp > f || gp - f < r.h,
        };
        if stable {
            out.push(Point::new(x, f));
        }
    }
    out
}

/// Every feasible BL-stable position of `r` inside the nice hole, in increasing `x`.
pub fn all_bl_locs(s: &NiceHole, r: Rect, visits: &mut Visits) -> Vec<Point> {
    if r.w > s.x_right() - s.x_left() {
        return Vec::new();
    }
    let c = bottom_function(s, r.w, visits);
    let d = top_function(s, r.w, visits);
    placing_function(s, r, &c, &d, visits)
}

/// Whether the staircase satisfies the pairing and ordering rules of the encoding.
pub fn staircase_well_formed(s: &Staircase) -> bool {
    let p = &s.points;
    let n = p.len();
    if n < 2 || !n.is_multiple_of(2) {
        return false;
    }
    if p.windows(2).any(|w| w[1].x < w[0].x) {
        return false;
    }
    if p[0].y != p[1].y || p[n - 2].y != p[n - 1].y {
        return false;
    }
    let k = n / 2;
    (1..k).all(|i| p[2 * i - 1].x == p[2 * i].x)
        && (0..k).all(|i| p[2 * i].y == p[2 * i + 1].y)
        && (1..k).all(|i| p[2 * i - 1].y != p[2 * i].y)
}
