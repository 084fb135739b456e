//! Holes: closed rectilinear boundaries stored as clockwise vertex cycles.
//!
//! A hole owns a `Vec<Point>` read as a circular list; edge `i` runs from vertex `i` to
//! vertex `i + 1`. Index arithmetic gives O(1) predecessor/successor in both directions,
//! which is all the sweeps need from a doubly linked list.

use crate::geometry::Point;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Direction of an edge in clockwise traversal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    Up,
    Down,
    Left,
    Right,
}

impl Dir {
    pub fn of(a: Point, b: Point) -> Option<Dir> {
        match (a.x == b.x, a.y == b.y) {
            (true, false) => Some(if b.y > a.y { Dir::Up } else { Dir::Down }),
            (false, true) => Some(if b.x > a.x { Dir::Right } else { Dir::Left }),
            _ => None,
        }
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Dir::Up | Dir::Down)
    }

    pub fn reverse(self) -> Dir {
        match self {
            Dir::Up => Dir::Down,
            Dir::Down => Dir::Up,
            Dir::Left => Dir::Right,
            Dir::Right => Dir::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Leftmost,
    Rightmost,
    Topmost,
    Botmost,
    LeftNotch,
    RightNotch,
    TopNotch,
    BottomNotch,
    PlainUp,
    PlainDown,
    PlainLeft,
    PlainRight,
}

/// Class of an edge from its own clockwise direction and those of its neighbours.
pub fn classify(pred: Dir, e: Dir, succ: Dir) -> EdgeClass {
    use Dir::*;
    match (pred, e, succ) {
        (Left, Up, Right) => EdgeClass::Leftmost,
        (Right, Up, Left) => EdgeClass::LeftNotch,
        (Right, Down, Left) => EdgeClass::Rightmost,
        (Left, Down, Right) => EdgeClass::RightNotch,
        (Up, Right, Down) => EdgeClass::Topmost,
        (Down, Right, Up) => EdgeClass::TopNotch,
        (Down, Left, Up) => EdgeClass::Botmost,
        (Up, Left, Down) => EdgeClass::BottomNotch,
        (_, Up, _) => EdgeClass::PlainUp,
        (_, Down, _) => EdgeClass::PlainDown,
        (_, Left, _) => EdgeClass::PlainLeft,
        (_, Right, _) => EdgeClass::PlainRight,
    }
}

/// An edge given by its endpoints in clockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: Point,
    pub to: Point,
}

impl Edge {
    pub fn dir(&self) -> Dir {
        Dir::of(self.from, self.to).expect("edges are axis-parallel")
    }
    pub fn x_min(&self) -> i64 {
        self.from.x.min(self.to.x)
    }
    pub fn x_max(&self) -> i64 {
        self.from.x.max(self.to.x)
    }
    pub fn y_min(&self) -> i64 {
        self.from.y.min(self.to.y)
    }
    pub fn y_max(&self) -> i64 {
        self.from.y.max(self.to.y)
    }
    /// The upper endpoint of a vertical edge, the left endpoint of a horizontal one.
    pub fn upper_or_left(&self) -> Point {
        if self.dir().is_vertical() {
            if self.from.y > self.to.y {
                self.from
            } else {
                self.to
            }
        } else if self.from.x < self.to.x {
            self.from
        } else {
            self.to
        }
    }
    pub fn lower_or_right(&self) -> Point {
        if self.upper_or_left() == self.from {
            self.to
        } else {
            self.from
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HoleError {
    #[error("boundary has {0} vertices after normalisation; at least 4 are required")]
    TooFewVertices(usize),
    #[error("consecutive vertices {0} and {1} are not axis-aligned")]
    Diagonal(Point, Point),
    #[error("boundary encloses zero area")]
    ZeroArea,
}

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
pub enum BlsViolation {
    #[error("edge {0} is a right notch")]
    RightNotch(usize),
    #[error("edge {0} is a top notch")]
    TopNotch(usize),
    #[error("vertex {0} is a second falling corner")]
    SecondFallingCorner(usize),
}

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
pub enum OrderingError {
    #[error("hole is not a BLS-hole: {0}")]
    NotBls(BlsViolation),
    #[error("expected exactly one rightmost edge, found {0}")]
    RightmostCount(usize),
    #[error("expected exactly one topmost edge, found {0}")]
    TopmostCount(usize),
    #[error("leftmost edges and left notches do not alternate")]
    NotAlternating,
    #[error("falling corner is not traversed between the last leftmost edge and the rightmost edge")]
    FallingCornerMisplaced,
}

/// `R, L_1, N_2, L_2, ..., N_k, L_k` as edge indices, plus the falling corner vertex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalOrdering {
    pub rightmost: usize,
    pub topmost: usize,
    /// `leftmost[i]` is `L_{i+1}`.
    pub leftmost: Vec<usize>,
    /// `notches[i]` is `N_{i+2}`.
    pub notches: Vec<usize>,
    pub falling_corner: Option<usize>,
}

impl CanonicalOrdering {
    pub fn k(&self) -> usize {
        self.leftmost.len()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hole {
    pts: Vec<Point>,
}

impl fmt::Debug for Hole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hole[")?;
        for (i, p) in self.pts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{},{}", p.x, p.y)?;
        }
        write!(f, "]")
    }
}

/// Drop repeated vertices and merge runs along one axis, including back-and-forth spikes.
fn simplify(pts: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in pts {
        if out.last() == Some(&p) {
            continue;
        }
        out.push(p);
        while out.len() >= 3 {
            let n = out.len();
            let (a, b, c) = (out[n - 3], out[n - 2], out[n - 1]);
            if (a.x == b.x && b.x == c.x) || (a.y == b.y && b.y == c.y) {
                out.remove(n - 2);
                if out[out.len() - 2] == out[out.len() - 1] {
                    out.pop();
                }
            } else {
                break;
            }
        }
    }
    // Close the cycle: the seam may still hold a collinear or repeated vertex.
    loop {
        let n = out.len();
        if n < 3 {
            break;
        }
        if out[0] == out[n - 1] {
            out.pop();
            continue;
        }
        let (a, b, c) = (out[n - 2], out[n - 1], out[0]);
        if (a.x == b.x && b.x == c.x) || (a.y == b.y && b.y == c.y) {
            out.pop();
            continue;
        }
        let (a, b, c) = (out[n - 1], out[0], out[1]);
        if (a.x == b.x && b.x == c.x) || (a.y == b.y && b.y == c.y) {
            out.remove(0);
            continue;
        }
        break;
    }
    out
}

/// Twice the signed shoelace area (positive for anticlockwise with `y` up).
pub fn signed_area2(pts: &[Point]) -> i128 {
    let n = pts.len();
    let mut s: i128 = 0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        s += a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128;
    }
    s
}

impl Hole {
    /// Build a hole from any closed rectilinear vertex loop, normalising orientation to
    /// clockwise and merging collinear runs.
    pub fn new(points: &[Point]) -> Result<Hole, HoleError> {
        let mut pts = simplify(points);
        if pts.len() < 4 {
            return Err(HoleError::TooFewVertices(pts.len()));
        }
        for i in 0..pts.len() {
            let (a, b) = (pts[i], pts[(i + 1) % pts.len()]);
            if Dir::of(a, b).is_none() {
                return Err(HoleError::Diagonal(a, b));
            }
        }
        let area = signed_area2(&pts);
        if area == 0 {
            return Err(HoleError::ZeroArea);
        }
        if area > 0 {
            pts.reverse();
        }
        Ok(Hole { pts })
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
    pub fn rectangle(x0: i64, y0: i64, x1: i64, y1: i64) -> Hole {
        Hole::new(&[Point::new(x0, y0), Point::new(x0, y1), Point::new(x1, y1), Point::new(x1, y0)])
            .expect("non-degenerate rectangle")
    }

    pub fn from_xy(coords: &[(i64, i64)]) -> Result<Hole, HoleError> {
        let pts: Vec<Point> = coords.iter().map(|&(x, y)| Point::new(x, y)).collect();
        Hole::new(&pts)
    }

    pub fn nv(&self) -> usize {
        self.pts.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.pts
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.pts[i % self.pts.len()]
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.pts.len()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.pts.len() - 1) % self.pts.len()
    }

    pub fn edge(&self, i: usize) -> Edge {
        Edge { from: self.pts[i], to: self.pts[self.next(i)] }
    }

    pub fn dir(&self, i: usize) -> Dir {
        self.edge(i).dir()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.nv()).map(move |i| self.edge(i))
    }

    pub fn classify_edge(&self, i: usize) -> EdgeClass {
        classify(self.dir(self.prev(i)), self.dir(i), self.dir(self.next(i)))
    }

    /// Vertex `i` is a falling corner when entered downward and left rightward.
    pub fn is_falling_corner(&self, i: usize) -> bool {
        self.dir(self.prev(i)) == Dir::Down && self.dir(i) == Dir::Right
    }

    pub fn falling_corners(&self) -> Vec<usize> {
        (0..self.nv()).filter(|&i| self.is_falling_corner(i)).collect()
    }

    /// Twice the enclosed area (positive).
    pub fn area2(&self) -> i128 {
        -signed_area2(&self.pts)
    }

    pub fn bbox(&self) -> (Point, Point) {
        let xs = self.pts.iter().map(|p| p.x);
        let ys = self.pts.iter().map(|p| p.y);
        (
            Point::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            Point::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.pts.iter().position(|&q| q == p)
    }

    /// Index of the edge whose closed segment contains `p`, preferring an edge starting at `p`.
    pub fn edge_containing(&self, p: Point) -> Option<usize> {
        if let Some(i) = self.index_of(p) {
            return Some(i);
        }
        (0..self.nv()).find(|&i| {
            let e = self.edge(i);
            p.x >= e.x_min() && p.x <= e.x_max() && p.y >= e.y_min() && p.y <= e.y_max()
        })
    }

    /// Make `p` a vertex (splitting the edge through it) and return its index. The result
    /// is temporarily non-normalised when `p` lands inside an edge.
    pub fn insert_vertex(&mut self, p: Point) -> Option<usize> {
        if let Some(i) = self.index_of(p) {
            return Some(i);
        }
        let i = self.edge_containing(p)?;
        self.pts.insert(i + 1, p);
        Some(i + 1)
    }

    pub fn validate_bls(&self) -> Result<(), BlsViolation> {
        let mut falling = None;
        for i in 0..self.nv() {
            match self.classify_edge(i) {
                EdgeClass::RightNotch => return Err(BlsViolation::RightNotch(i)),
                EdgeClass::TopNotch => return Err(BlsViolation::TopNotch(i)),
                _ => {}
            }
            if self.is_falling_corner(i) {
                if falling.is_some() {
                    return Err(BlsViolation::SecondFallingCorner(i));
                }
                falling = Some(i);
            }
        }
        Ok(())
    }

    /// One clockwise pass starting at the rightmost edge.
    pub fn canonical_ordering(&self) -> Result<CanonicalOrdering, OrderingError> {
        self.validate_bls().map_err(OrderingError::NotBls)?;
        let classes: Vec<EdgeClass> = (0..self.nv()).map(|i| self.classify_edge(i)).collect();
        let rightmost: Vec<usize> = (0..self.nv()).filter(|&i| classes[i] == EdgeClass::Rightmost).collect();
        if rightmost.len() != 1 {
            return Err(OrderingError::RightmostCount(rightmost.len()));
        }
        let topmost: Vec<usize> = (0..self.nv()).filter(|&i| classes[i] == EdgeClass::Topmost).collect();
        if topmost.len() != 1 {
            return Err(OrderingError::TopmostCount(topmost.len()));
        }
        let r = rightmost[0];
        let mut leftmost = Vec::new();
        let mut notches = Vec::new();
        let mut falling_corner = None;
        let mut fc_after_last_l = true;
        let mut expect_leftmost = true;
        let mut i = r;
        for _ in 0..self.nv() {
            i = self.next(i);
            if i == r {
                break;
            }
            if self.is_falling_corner(i) {
                falling_corner = Some(i);
                fc_after_last_l = true;
            }
            match classes[i] {
                EdgeClass::Leftmost => {
                    if !expect_leftmost {
                        return Err(OrderingError::NotAlternating);
                    }
                    leftmost.push(i);
                    expect_leftmost = false;
                    if falling_corner.is_some() {
                        fc_after_last_l = false;
                    }
                }
                EdgeClass::LeftNotch => {
                    if expect_leftmost {
                        return Err(OrderingError::NotAlternating);
                    }
                    notches.push(i);
                    expect_leftmost = true;
                }
                _ => {}
            }
        }
        if self.is_falling_corner(r) {
            falling_corner = Some(r);
        }
        if leftmost.is_empty() || expect_leftmost {
            return Err(OrderingError::NotAlternating);
        }
        if falling_corner.is_some() && !fc_after_last_l {
            return Err(OrderingError::FallingCornerMisplaced);
        }
        Ok(CanonicalOrdering { rightmost: r, topmost: topmost[0], leftmost, notches, falling_corner })
    }

    /// Edge indices from edge `from` to edge `to` inclusive, walking in the given direction.
    /// A full loop when `from == to`.
    pub fn traverse(&self, from: usize, to: usize, clockwise: bool) -> Traverse<'_> {
        let n = self.nv();
        let steps = if clockwise { (to + n - from) % n } else { (from + n - to) % n };
        let left = if steps == 0 { n } else { steps + 1 };
        Traverse { hole: self, cur: from, left, clockwise }
    }

    /// The rightmost edge used as the start of debug dumps: the unique one for BLS-holes,
    /// otherwise the one with the largest `x` and then the highest upper vertex.
    pub fn dump_start(&self) -> usize {
        (0..self.nv())
            .filter(|&i| self.classify_edge(i) == EdgeClass::Rightmost)
            .max_by_key(|&i| (self.edge(i).x_max(), self.edge(i).y_max(), std::cmp::Reverse(i)))
            .unwrap_or(0)
    }

    /// Vertex cycle starting at the upper vertex of the rightmost edge.
    pub fn dump_order(&self) -> Vec<Point> {
        let s = self.dump_start();
        (0..self.nv()).map(|k| self.pts[(s + k) % self.nv()]).collect()
    }

    /// `x y` per line, clockwise from the upper vertex of the rightmost edge.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for p in self.dump_order() {
            s.push_str(&format!("{} {}\n", p.x, p.y));
        }
        s
    }

    /// Vertex cycle rotated to start at its smallest point; equal for equal holes.
    pub fn canonical_cycle(&self) -> Vec<Point> {
        let start = (0..self.nv()).min_by_key(|&i| self.pts[i]).unwrap();
        (0..self.nv()).map(|k| self.pts[(start + k) % self.nv()]).collect()
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Hole {
        Hole { pts: self.pts.iter().map(|p| Point::new(p.x + dx, p.y + dy)).collect() }
    }

    /// Vertices from index `i` to index `j` inclusive, clockwise.
    pub fn vertex_run(&self, i: usize, j: usize) -> Vec<Point> {
        let mut out = vec![self.pts[i]];
        let mut k = i;
        while k != j {
            k = self.next(k);
            out.push(self.pts[k]);
        }
        out
    }
}

/// Link directed boundary pieces into closed cycles, each with its interior on the right.
///
/// At a vertex with several outgoing pieces the sharpest right turn wins, then straight,
/// then left. That pairing keeps regions meeting at a single corner in separate cycles.
/// Every piece is used exactly once; the tags of the pieces making up each cycle are
/// returned with it.
pub fn trace_cycles<T: Copy>(pieces: &[(Point, Point, T)]) -> Vec<(Vec<Point>, Vec<T>)> {
    let mut outs: HashMap<Point, Vec<usize>> = HashMap::with_capacity(pieces.len());
    for (k, &(a, _, _)) in pieces.iter().enumerate() {
        outs.entry(a).or_default().push(k);
    }
    let mut used = vec![false; pieces.len()];
    let mut cycles = Vec::new();
    for start in 0..pieces.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut pts = vec![pieces[start].0];
        let mut tags = vec![pieces[start].2];
        let mut cur = start;
        loop {
            let (a, b, _) = pieces[cur];
            let din = ((b.x - a.x).signum(), (b.y - a.y).signum());
            let cands = outs.get(&b).map(Vec::as_slice).unwrap_or(&[]);
            let next = cands
                .iter()
                .copied()
                .filter(|&k| !used[k] || k == start)
                .min_by_key(|&k| {
                    let c = pieces[k].1;
                    let dout = ((c.x - b.x).signum(), (c.y - b.y).signum());
                    let cross = din.0 * dout.1 - din.1 * dout.0;
                    // Right turn, straight, left turn, reversal.
                    if cross < 0 {
                        0
                    } else if dout == din {
                        1
                    } else if cross > 0 {
                        2
                    } else {
                        3
                    }
                })
                .expect("pieces form closed cycles");
            if next == start {
                break;
            }
            used[next] = true;
            pts.push(b);
            tags.push(pieces[next].2);
            cur = next;
        }
        cycles.push((pts, tags));
    }
    cycles
}

pub struct Traverse<'a> {
    hole: &'a Hole,
    cur: usize,
    left: usize,
    clockwise: bool,
}

impl Iterator for Traverse<'_> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.left == 0 {
            return None;
        }
        self.left -= 1;
        let c = self.cur;
        self.cur = if self.clockwise { self.hole.next(c) } else { self.hole.prev(c) };
        Some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::bls_hole;

    #[test]
    fn rectangle_classes() {
        let h = Hole::rectangle(0, 0, 10, 5);
        let mut classes: Vec<EdgeClass> = (0..4).map(|i| h.classify_edge(i)).collect();
        classes.sort_by_key(|c| format!("{c:?}"));
        assert_eq!(classes, vec![EdgeClass::Botmost, EdgeClass::Leftmost, EdgeClass::Rightmost, EdgeClass::Topmost]);
        assert_eq!(h.nv(), 4);
        let o = h.canonical_ordering().unwrap();
        assert_eq!(o.k(), 1);
        assert!(o.notches.is_empty());
        assert_eq!(o.falling_corner, None);
        assert_eq!(h.traverse(o.rightmost, o.rightmost, true).count(), 4);
    }

    #[test]
    fn orientation_is_normalised() {
        let ccw = Hole::from_xy(&[(0, 0), (4, 0), (4, 3), (0, 3)]).unwrap();
        let cw = Hole::from_xy(&[(0, 0), (0, 3), (4, 3), (4, 0)]).unwrap();
        assert_eq!(ccw.canonical_cycle(), cw.canonical_cycle());
        assert!(signed_area2(ccw.vertices()) < 0);
    }

    #[test]
    fn collinear_vertices_merge() {
        let h = Hole::from_xy(&[(0, 0), (0, 2), (0, 3), (2, 3), (4, 3), (4, 0), (2, 0)]).unwrap();
        assert_eq!(h.nv(), 4);
    }

    #[test]
    fn right_notch_fails_bls() {
        // U-shape opening to the right: the inner vertical edge is a right notch.
        let h = Hole::from_xy(&[(0, 0), (0, 6), (6, 6), (6, 4), (2, 4), (2, 2), (6, 2), (6, 0)]).unwrap();
        let err = h.validate_bls().unwrap_err();
        let BlsViolation::RightNotch(i) = err else { panic!("{err:?}") };
        assert_eq!(h.edge(i).x_min(), 2);
    }

    #[test]
    fn four_notch_hole_ordering() {
        let h = bls_hole();
        assert_eq!(h.nv(), 42);
        h.validate_bls().unwrap();
        let o = h.canonical_ordering().unwrap();
        assert_eq!(o.k(), 4);
        assert_eq!(o.notches.len(), 3);
        let e = |i: usize| (h.edge(i).from, h.edge(i).to);
        let p = Point::new;
        assert_eq!(e(o.rightmost), (p(24, 15), p(24, 10)));
        assert_eq!(e(o.leftmost[0]), (p(7, 1), p(7, 2)));
        assert_eq!(e(o.notches[0]), (p(12, 3), p(12, 4)));
        assert_eq!(e(o.leftmost[1]), (p(1, 5), p(1, 6)));
        assert_eq!(e(o.notches[1]), (p(5, 11), p(5, 12)));
        assert_eq!(e(o.leftmost[2]), (p(1, 13), p(1, 14)));
        assert_eq!(e(o.notches[2]), (p(7, 15), p(7, 16)));
        assert_eq!(e(o.leftmost[3]), (p(0, 16), p(0, 17)));
        assert_eq!(h.vertex(o.falling_corner.unwrap()), p(12, 15));
        assert_eq!(h.classify_edge(o.notches[0]), EdgeClass::LeftNotch);
    }

    #[test]
    fn dump_starts_at_rightmost_upper_vertex() {
        let h = bls_hole();
        let first = h.dump().lines().next().unwrap().to_string();
        assert_eq!(first, "24 15");
        assert_eq!(h.dump().lines().count(), 42);
    }

    #[test]
    fn traversal_directions_agree() {
        let h = bls_hole();
        let cw: Vec<usize> = h.traverse(3, 20, true).collect();
        let mut ccw: Vec<usize> = h.traverse(20, 3, false).collect();
        ccw.reverse();
        assert_eq!(cw, ccw);
    }
}
