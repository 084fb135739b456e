//! Bottom-left strip packing with an explicit hole structure.
//!
//! Rectangles are placed in input order at the lowest, then leftmost, feasible position.
//! Free space below the skyline is kept as a set of rectilinear holes; each placement
//! searches every hole for its bottom-left stable positions and splices the rectangle into
//! the hole it lands in.

pub mod fixtures;
pub mod geometry;
pub mod hole;
pub mod io;
pub mod oracle;
pub mod packer;
pub mod partition;
pub mod render;
pub mod scan;

pub use geometry::{overlaps, packing_height, Packing, Placement, Point, Rect};
pub use hole::{CanonicalOrdering, Dir, Edge, EdgeClass, Hole};
pub use io::{Instance, ParseError};
pub use packer::{pack, HoleStore, PackReport};
