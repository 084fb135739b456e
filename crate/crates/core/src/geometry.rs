//! Integer points, rectangles and placements, plus the strip feasibility predicates.

use std::fmt;

/// Integer lattice point. `y` grows upward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub const fn shift_x(self, d: i64) -> Self {
        Point::new(self.x + d, self.y)
    }

    pub const fn shift_y(self, d: i64) -> Self {
        Point::new(self.x, self.y + d)
    }

    /// Key for the bottom-left order: lowest `y` first, then lowest `x`.
    pub const fn yx(self) -> (i64, i64) {
        (self.y, self.x)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Width/height pair. Instances only ever contain rectangles with both sides at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub w: i64,
    pub h: i64,
}

impl Rect {
    pub const fn new(w: i64, h: i64) -> Self {
        Rect { w, h }
    }
}

/// A rectangle together with its lower-left corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Placement {
    pub rect: Rect,
    pub origin: Point,
}

impl Placement {
    pub const fn new(rect: Rect, origin: Point) -> Self {
        Placement { rect, origin }
    }

    pub const fn at(x: i64, y: i64, w: i64, h: i64) -> Self {
        Placement::new(Rect::new(w, h), Point::new(x, y))
    }

    pub const fn x_min(&self) -> i64 {
        self.origin.x
    }

    pub const fn x_max(&self) -> i64 {
        self.origin.x + self.rect.w
    }

    pub const fn y_min(&self) -> i64 {
        self.origin.y
    }

    pub const fn y_max(&self) -> i64 {
        self.origin.y + self.rect.h
    }
}

/// True iff the open interiors intersect; shared edges and corners do not count.
pub fn overlaps(a: &Placement, b: &Placement) -> bool {
    a.x_min() < b.x_max() && b.x_min() < a.x_max() && a.y_min() < b.y_max() && b.y_min() < a.y_max()
}

/// Containment in the strip `[0, W] x [0, inf)`.
pub fn fits_in_strip(p: &Placement, strip_width: i64) -> bool {
    p.x_min() >= 0 && p.x_max() <= strip_width && p.y_min() >= 0
}

/// A (possibly partial) packing: one slot per input rectangle, `None` while unplaced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    pub strip_width: i64,
    pub slots: Vec<Option<Placement>>,
}

impl Packing {
    pub fn new(strip_width: i64, n: usize) -> Self {
        Packing { strip_width, slots: vec![None; n] }
    }

    /// A fully placed packing from explicit placements.
    pub fn from_placements(strip_width: i64, placements: Vec<Placement>) -> Self {
        Packing { strip_width, slots: placements.into_iter().map(Some).collect() }
    }

    pub fn placed(&self) -> impl Iterator<Item = &Placement> + '_ {
        self.slots.iter().flatten()
    }

    pub fn placed_count(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    /// Lower-left corners in input order; panics on an unplaced slot.
    pub fn origins(&self) -> Vec<Point> {
        self.slots.iter().map(|s| s.expect("unplaced rectangle").origin).collect()
    }
}

/// Maximum `y_max` over the placed rectangles, 0 when nothing is placed.
pub fn packing_height(p: &Packing) -> i64 {
    p.placed().map(Placement::y_max).max().unwrap_or(0)
}
