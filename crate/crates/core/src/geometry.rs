//! Exact integer lattice geometry.

use serde::{Deserialize, Serialize};

/// A grid point. Vertices sit on even columns, bends on odd columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

/// Sign of the cross product `(b - a) x (c - a)`.
pub fn orientation(a: Point, b: Point, c: Point) -> i8 {
    let v = (b.x - a.x) as i128 * (c.y - a.y) as i128 - (b.y - a.y) as i128 * (c.x - a.x) as i128;
    v.signum() as i8
}

/// True if `p` lies on the closed segment `a`-`b`.
pub fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orientation(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// True if `p` lies on segment `a`-`b` but is neither endpoint.
pub fn strictly_inside(a: Point, b: Point, p: Point) -> bool {
    p != a && p != b && on_segment(a, b, p)
}

/// Closed segments share at least one point.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Lattice points strictly inside segment `a`-`b`, from `a` towards `b`.
pub fn interior_lattice_points(a: Point, b: Point) -> impl Iterator<Item = Point> {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let g = gcd(dx.unsigned_abs(), dy.unsigned_abs()) as i64;
    let (sx, sy) = if g == 0 { (0, 0) } else { (dx / g, dy / g) };
    (1..g.max(1)).map(move |t| Point::new(a.x + t * sx, a.y + t * sy))
}

/// Canonical undirected form of a segment.
pub fn canonical(a: Point, b: Point) -> (Point, Point) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
