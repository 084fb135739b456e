//! Text formats and instance generators.
//!
//! Instance: `W n` on the first line, then `n` lines `w h`. Packing: `height H`, then one
//! `x y` line per rectangle in input order.

use crate::fixtures;
use crate::geometry::{packing_height, Packing, Placement, Point, Rect};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub strip_width: i64,
    pub rects: Vec<Rect>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("instance has no rectangles")]
    Empty,
    #[error("expected {expected} rectangle lines, found {found}")]
    Count { expected: usize, found: usize },
}

fn line_err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line { line, msg: msg.into() }
}

impl Instance {
    /// Checks `W >= 1`, at least one rectangle, and `1 <= w <= W`, `h >= 1` for each.
    pub fn new(strip_width: i64, rects: Vec<Rect>) -> Result<Instance, ParseError> {
        if strip_width < 1 {
            return Err(line_err(1, "strip width must be positive"));
        }
        if rects.is_empty() {
            return Err(ParseError::Empty);
        }
        for (i, r) in rects.iter().enumerate() {
            check_rect(*r, strip_width, i + 2)?;
        }
        Ok(Instance { strip_width, rects })
    }

    pub fn n(&self) -> usize {
        self.rects.len()
    }
}

fn check_rect(r: Rect, strip_width: i64, line: usize) -> Result<(), ParseError> {
    if r.w < 1 || r.h < 1 {
        return Err(line_err(line, "rectangle sides must be at least 1"));
    }
    if r.w > strip_width {
        return Err(line_err(line, format!("width {} exceeds strip width {}", r.w, strip_width)));
    }
    Ok(())
}

fn ints<const N: usize>(line: &str, no: usize) -> Result<[i64; N], ParseError> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != N {
        return Err(line_err(no, format!("expected {N} integers, found {}", parts.len())));
    }
    let mut out = [0i64; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| line_err(no, format!("not an integer: {p:?}")))?;
    }
    Ok(out)
}

/// Non-empty lines with their 1-based line numbers.
/// Non-blank lines with their 1-based numbers; lines starting with `#` are comments.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut it = lines(text);
    let (no, head) = it.next().ok_or(ParseError::Empty)?;
    let [w, n] = ints::<2>(head, no)?;
    if w < 1 {
        return Err(line_err(no, "strip width must be positive"));
    }
    if n < 1 {
        return Err(ParseError::Empty);
    }
    let mut rects = Vec::with_capacity(n as usize);
    for (no, l) in it {
        if rects.len() == n as usize {
            return Err(line_err(no, "more rectangle lines than announced"));
        }
        let [rw, rh] = ints::<2>(l, no)?;
        let r = Rect::new(rw, rh);
        check_rect(r, w, no)?;
        rects.push(r);
    }
    if rects.len() != n as usize {
        return Err(ParseError::Count { expected: n as usize, found: rects.len() });
    }
    Ok(Instance { strip_width: w, rects })
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut s = format!("{} {}\n", inst.strip_width, inst.rects.len());
    for r in &inst.rects {
        s.push_str(&format!("{} {}\n", r.w, r.h));
    }
    s
}

/// Placed rectangles only; the packing must be complete.
pub fn serialize_packing(pk: &Packing) -> String {
    let mut s = format!("height {}\n", packing_height(pk));
    for p in &pk.slots {
        let p = p.expect("only complete packings are written");
        s.push_str(&format!("{} {}\n", p.origin.x, p.origin.y));
    }
    s
}

/// Read a packing for `inst`; the header height must match the placements.
pub fn parse_packing(text: &str, inst: &Instance) -> Result<Packing, ParseError> {
    let pk = parse_packing_prefix(text, inst)?;
    let found = pk.slots.iter().filter(|s| s.is_some()).count();
    if found != inst.n() {
        return Err(ParseError::Count { expected: inst.n(), found });
    }
    Ok(pk)
}

/// Like [`parse_packing`], but the file may place only the first `k <= n` rectangles.
pub fn parse_packing_prefix(text: &str, inst: &Instance) -> Result<Packing, ParseError> {
    let mut it = lines(text);
    let (no, head) = it.next().ok_or_else(|| line_err(1, "missing height line"))?;
    let height = match head.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["height", h] => h.parse::<i64>().map_err(|_| line_err(no, "height is not an integer"))?,
        _ => return Err(line_err(no, "expected \"height H\"")),
    };
    let mut pk = Packing::new(inst.strip_width, inst.n());
    for (k, (no, l)) in it.enumerate() {
        if k == inst.n() {
            return Err(line_err(no, "more positions than rectangles"));
        }
        let [x, y] = ints::<2>(l, no)?;
        pk.slots[k] = Some(Placement::new(inst.rects[k], Point::new(x, y)));
    }
    if packing_height(&pk) != height {
        return Err(line_err(no, format!("height {height} does not match placements ({})", packing_height(&pk))));
    }
    Ok(pk)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `n` rectangles with sides in `1..=max_dim` on a strip of width `strip_width`.
    Random { n: usize, strip_width: i64, max_dim: i64 },
    /// Same as `Random`, sorted by non-increasing width.
    DecreasingWidth { n: usize, strip_width: i64, max_dim: i64 },
    /// A hole with a long staircase next to many notches, then rectangles searched in it.
    StaircaseFlaw { n: usize },
    /// Layout whose packing leaves the four-notch BLS-hole of the fixtures module.
    BlsFixture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("size {0} is outside the supported range {1}..={2}")]
    Size(usize, usize, usize),
    #[error("invalid parameters: {0}")]
    Params(String),
}

/// Largest `n` accepted by the generators; keeps coordinates and memory modest.
pub const MAX_GENERATED: usize = 1 << 20;

pub fn generate(spec: &GeneratorSpec) -> Result<Instance, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.family {
        Family::Random { n, strip_width, max_dim } | Family::DecreasingWidth { n, strip_width, max_dim } => {
            if n == 0 || n > MAX_GENERATED {
                return Err(GenError::Size(n, 1, MAX_GENERATED));
            }
            if strip_width < 1 || max_dim < 1 {
                return Err(GenError::Params("strip width and max_dim must be positive".into()));
            }
            let mut rects: Vec<Rect> = (0..n)
                .map(|_| Rect::new(rng.gen_range(1..=max_dim.min(strip_width)), rng.gen_range(1..=max_dim)))
                .collect();
            if matches!(spec.family, Family::DecreasingWidth { .. }) {
                rects.sort_by_key(|r| std::cmp::Reverse(r.w));
            }
            Ok(Instance { strip_width, rects })
        }
        Family::StaircaseFlaw { n } => staircase_flaw(n),
        Family::BlsFixture => Ok(Instance { strip_width: fixtures::BLS_STRIP_WIDTH, rects: fixtures::bls_rects() }),
    }
}

/// Parameters of the staircase family for a given `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StaircaseParams {
    /// Columns forming the staircase.
    pub m: usize,
    /// Notches on the tower side.
    pub k: usize,
    /// Rectangles dropped into the well once the structure stands.
    pub load: usize,
}

impl StaircaseParams {
    pub fn for_n(n: usize) -> Option<StaircaseParams> {
        if n < 12 {
            return None;
        }
        // n = 1 base + m columns + (2k + 1) tower rows + load, with load = 2k + 1.
        let k = n / 6;
        let rows = 2 * k + 1;
        let load = rows;
        let m = n.checked_sub(1 + rows + load)?;
        if m == 0 {
            return None;
        }
        Some(StaircaseParams { m, k, load })
    }

    pub fn well_width(&self) -> i64 {
        (self.m + self.k + 4) as i64
    }

    pub fn base_width(&self) -> i64 {
        (4 * self.m + 4 * self.k + 10) as i64
    }

    /// Strip width: base, staircase columns, then the well.
    pub fn strip_width(&self) -> i64 {
        self.base_width() + self.m as i64 + self.well_width()
    }
}

/// Staircase layout placed by BL exactly as constructed, in this order:
///
/// 1. a floor slab `[0, B] x [0, 1]`;
/// 2. `m` unit-wide columns right of it, each one taller than the last;
/// 3. a tower on the slab whose rows alternate between a short width and slowly shrinking
///    long widths, so every long row juts out as a left notch of the free region;
/// 4. `load` bars exactly as wide as the well right of the columns.
///
/// The long rows shrink upward, so every notch sees the ceiling straight above it and the
/// whole column staircase within one bar width to its right. Bars are wider than any gap
/// next to the tower, so each one lands in the well while every live search still has to
/// deal with the full notched hole.
pub fn staircase_flaw(n: usize) -> Result<Instance, GenError> {
    if n > MAX_GENERATED {
        return Err(GenError::Size(n, 12, MAX_GENERATED));
    }
    let p = StaircaseParams::for_n(n).ok_or(GenError::Size(n, 12, MAX_GENERATED))?;
    let (b, w) = (p.base_width(), p.well_width());
    let rows = 2 * p.k + 1;
    let column_base = rows as i64 + 2;
    let mut rects = vec![Rect::new(b, 1)];
    for c in 0..p.m {
        rects.push(Rect::new(1, column_base + c as i64));
    }
    let short = b - p.k as i64 - 3;
    for r in 0..rows {
        let width = if r % 2 == 0 { short } else { b - 1 - (r / 2) as i64 };
        rects.push(Rect::new(width, 1));
    }
    for _ in 0..p.load {
        rects.push(Rect::new(w, 1));
    }
    debug_assert_eq!(rects.len(), n);
    Ok(Instance { strip_width: p.strip_width(), rects })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_example() {
        let inst = parse_instance("6 2\n2 1\n1 2").unwrap();
        assert_eq!(inst, Instance { strip_width: 6, rects: vec![Rect::new(2, 1), Rect::new(1, 2)] });
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert_eq!(parse_instance("3 1\n4 1\n").unwrap_err(), line_err(2, "width 4 exceeds strip width 3"));
        assert!(matches!(parse_instance("3 2\n1 1\n0 1\n"), Err(ParseError::Line { line: 3, .. })));
        assert!(matches!(parse_instance("3 1\n1 x\n"), Err(ParseError::Line { line: 2, .. })));
        assert_eq!(parse_instance("3 0\n"), Err(ParseError::Empty));
        assert_eq!(parse_instance(""), Err(ParseError::Empty));
        assert!(matches!(parse_instance("3 2\n1 1\n"), Err(ParseError::Count { .. })));
    }

    #[test]
    fn packing_text() {
        let inst = Instance::new(4, vec![Rect::new(2, 3)]).unwrap();
        let pk = Packing::from_placements(4, vec![Placement::at(0, 0, 2, 3)]);
        let text = serialize_packing(&pk);
        assert_eq!(text, "height 3\n0 0\n");
        assert_eq!(parse_packing(&text, &inst).unwrap(), pk);
        assert!(parse_packing("height 4\n0 0\n", &inst).is_err());
    }

    #[test]
    fn packing_prefix_and_comments() {
        let inst = Instance::new(4, vec![Rect::new(2, 3), Rect::new(2, 1)]).unwrap();
        let pk = parse_packing_prefix("height 3\n0 0\n# note\n", &inst).unwrap();
        assert_eq!(pk.slots[1], None);
        assert_eq!(parse_packing("height 3\n0 0\n", &inst).unwrap_err(), ParseError::Count { expected: 2, found: 1 });
        assert!(parse_packing("height 3\n0 0\n2 0\n# 0 1 2\n", &inst).is_ok());
        assert!(parse_packing_prefix("height 0\n", &inst).unwrap().slots.iter().all(Option::is_none));
    }

    #[test]
    fn generators_are_deterministic() {
        let spec = GeneratorSpec { family: Family::Random { n: 30, strip_width: 20, max_dim: 8 }, seed: 9 };
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let d = generate(&GeneratorSpec {
            family: Family::DecreasingWidth { n: 30, strip_width: 20, max_dim: 8 },
            seed: 9,
        })
        .unwrap();
        assert!(d.rects.windows(2).all(|w| w[0].w >= w[1].w));
    }

    #[test]
    fn staircase_sizes() {
        for n in [12, 100, 128, 1024] {
            assert_eq!(staircase_flaw(n).unwrap().n(), n);
        }
        assert!(staircase_flaw(5).is_err());
    }

    proptest! {
        #[test]
        fn instance_round_trip(w in 1i64..50, dims in prop::collection::vec((1i64..50, 1i64..50), 1..20)) {
            let rects: Vec<Rect> = dims.iter().map(|&(a, h)| Rect::new(a.min(w), h)).collect();
            let inst = Instance::new(w, rects).unwrap();
            prop_assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
        }
    }
}
