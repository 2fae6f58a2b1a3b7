//! Planar kernel: points, the six π/3 cones, robust predicates and
//! parameterized constraint lines.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{Result, SteinerError};

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Rejects NaN and infinite coordinates.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(SteinerError::NonFinite(x, y))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    fn lex_cmp(&self, o: &Point) -> Ordering {
        self.x.total_cmp(&o.x).then(self.y.total_cmp(&o.y))
    }
}

impl Add for Point {
    type Output = Point;

    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;

    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn distance(p: Point, q: Point) -> f64 {
    (p.x - q.x).hypot(p.y - q.y)
}

/// Sign of the signed area of `abc`: +1 counterclockwise, -1 clockwise,
/// 0 collinear. Evaluated with adaptive-precision arithmetic, so the sign is
/// exact for finite inputs.
pub fn orient2d(a: Point, b: Point, c: Point) -> i8 {
    let det = robust::orient2d(coord(a), coord(b), coord(c));
    sign(det)
}

/// +1 if `d` lies strictly inside the circumcircle of the counterclockwise
/// triangle `abc`, -1 if strictly outside, 0 if cocircular. Exact.
pub fn incircle(a: Point, b: Point, c: Point, d: Point) -> i8 {
    let det = robust::incircle(coord(a), coord(b), coord(c), coord(d));
    sign(det)
}

fn coord(p: Point) -> robust::Coord<f64> {
    robust::Coord { x: p.x, y: p.y }
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

const HALF_SQRT_3: f64 = 0.866_025_403_784_438_6;

/// Unit boundary directions θ_i = iπ/3. Opposite directions are exact
/// negations of each other.
pub(crate) const CONE_DIRS: [Point; 6] = [
    Point::new(1.0, 0.0),
    Point::new(0.5, HALF_SQRT_3),
    Point::new(-0.5, HALF_SQRT_3),
    Point::new(-1.0, 0.0),
    Point::new(-0.5, -HALF_SQRT_3),
    Point::new(0.5, -HALF_SQRT_3),
];

/// One of the six half-open angular sectors `[iπ/3, (i+1)π/3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConeIndex(u8);

impl ConeIndex {
    pub const ALL: [ConeIndex; 6] = [
        ConeIndex(0),
        ConeIndex(1),
        ConeIndex(2),
        ConeIndex(3),
        ConeIndex(4),
        ConeIndex(5),
    ];

    pub fn new(i: usize) -> Option<Self> {
        (i < 6).then_some(ConeIndex(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Lower boundary direction of the sector.
    pub fn lower(self) -> Point {
        CONE_DIRS[self.index()]
    }

    /// Upper boundary direction (exclusive).
    pub fn upper(self) -> Point {
        CONE_DIRS[(self.index() + 1) % 6]
    }
}

/// Sector membership of a nonzero vector: `v` is in sector `i` iff it is on
/// or left of the lower boundary and strictly right of the upper boundary.
fn sector_contains(i: ConeIndex, v: Point) -> bool {
    i.lower().cross(v) >= 0.0 && i.upper().cross(v) < 0.0
}

/// The sector containing `v`, or `None` for the zero vector.
pub fn cone_of_vector(v: Point) -> Option<ConeIndex> {
    if v.x == 0.0 && v.y == 0.0 {
        return None;
    }
    ConeIndex::ALL.into_iter().find(|&i| sector_contains(i, v))
}

/// The cone of `apex` that contains `p`.
pub fn cone_of(apex: Point, p: Point) -> Option<ConeIndex> {
    cone_of_vector(p - apex)
}

pub fn cone_contains(apex: Point, i: ConeIndex, p: Point) -> Result<bool> {
    let v = p - apex;
    if v.x == 0.0 && v.y == 0.0 {
        return Err(SteinerError::ApexQuery);
    }
    Ok(sector_contains(i, v))
}

/// Closed parameter range; either end may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
}

impl ParamRange {
    pub const FULL: ParamRange = ParamRange {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(SteinerError::BadRange(lo, hi));
        }
        Ok(ParamRange { lo, hi })
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.lo && t <= self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn intersect(&self, o: &ParamRange) -> Option<ParamRange> {
        let lo = self.lo.max(o.lo);
        let hi = self.hi.min(o.hi);
        (lo < hi).then_some(ParamRange { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaKind {
    Line,
    Ray,
    Segment,
}

impl GammaKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GammaKind::Line => "line",
            GammaKind::Ray => "ray",
            GammaKind::Segment => "segment",
        }
    }
}

/// A line, ray or segment parameterized by arc length:
/// `point(t) = origin + t * direction` for `t` in `range`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gamma {
    origin: Point,
    direction: Point,
    kind: GammaKind,
    range: ParamRange,
}

impl Gamma {
    /// Builds a constraint from a possibly unnormalized direction.
    ///
    /// Lines ignore `range` unless it is given, in which case it must be
    /// unbounded on both sides; rays default to `[0, ∞)`; segments need an
    /// explicit finite range.
    pub fn new(
        kind: GammaKind,
        origin: Point,
        direction: Point,
        range: Option<(f64, f64)>,
    ) -> Result<Self> {
        if !origin.is_finite() {
            return Err(SteinerError::NonFinite(origin.x, origin.y));
        }
        let len = direction.norm();
        if !len.is_finite() || len == 0.0 {
            return Err(SteinerError::BadDirection);
        }
        let direction = direction.scale(1.0 / len);
        let range = match (kind, range) {
            (GammaKind::Line, None) => ParamRange::FULL,
            (GammaKind::Line, Some((lo, hi))) => {
                if lo == f64::NEG_INFINITY && hi == f64::INFINITY {
                    ParamRange::FULL
                } else {
                    return Err(SteinerError::BadRange(lo, hi));
                }
            }
            (GammaKind::Ray, None) => ParamRange::new(0.0, f64::INFINITY)?,
            (GammaKind::Ray, Some((lo, hi))) => {
                let r = ParamRange::new(lo, hi)?;
                if r.lo.is_finite() == r.hi.is_finite() {
                    return Err(SteinerError::BadRange(lo, hi));
                }
                r
            }
            (GammaKind::Segment, Some((lo, hi))) => {
                let r = ParamRange::new(lo, hi)?;
                if !r.is_bounded() {
                    return Err(SteinerError::BadRange(lo, hi));
                }
                r
            }
            (GammaKind::Segment, None) => {
                return Err(SteinerError::BadRange(f64::NAN, f64::NAN));
            }
        };
        Ok(Gamma {
            origin,
            direction,
            kind,
            range,
        })
    }

    pub fn line(origin: Point, direction: Point) -> Result<Self> {
        Gamma::new(GammaKind::Line, origin, direction, None)
    }

    pub fn ray(origin: Point, direction: Point) -> Result<Self> {
        Gamma::new(GammaKind::Ray, origin, direction, None)
    }

    /// Segment from `a` to `b`, parameterized over `[0, |b - a|]`.
    pub fn segment(a: Point, b: Point) -> Result<Self> {
        let len = distance(a, b);
        Gamma::new(GammaKind::Segment, a, b - a, Some((0.0, len)))
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn direction(&self) -> Point {
        self.direction
    }

    pub fn kind(&self) -> GammaKind {
        self.kind
    }

    pub fn range(&self) -> ParamRange {
        self.range
    }

    /// Unchecked evaluation; `t` may lie outside the range.
    pub fn at(&self, t: f64) -> Point {
        Point::new(
            self.origin.x + t * self.direction.x,
            self.origin.y + t * self.direction.y,
        )
    }

    /// Parameter of the orthogonal projection of `p` onto the supporting line.
    pub fn project(&self, p: Point) -> f64 {
        (p - self.origin).dot(self.direction)
    }

    /// Smallest distance from `p` to `point(t)` over `t` in `[lo, hi]`.
    pub fn distance_to_span(&self, p: Point, lo: f64, hi: f64) -> f64 {
        let t = self.project(p).clamp(lo, hi);
        distance(p, self.at(t))
    }
}

pub fn gamma_point(gamma: &Gamma, t: f64) -> Result<Point> {
    let r = gamma.range();
    if t.is_nan() || !r.contains(t) {
        return Err(SteinerError::OutOfRange {
            t,
            lo: r.lo,
            hi: r.hi,
        });
    }
    Ok(gamma.at(t))
}

/// Checks finiteness and pairwise distinctness.
pub fn validate_points(points: &[Point]) -> Result<()> {
    if let Some(p) = points.iter().find(|p| !p.is_finite()) {
        return Err(SteinerError::NonFinite(p.x, p.y));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].lex_cmp(&points[b]));
    for w in order.windows(2) {
        if points[w[0]] == points[w[1]] {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(SteinerError::DuplicatePoint(a, b));
        }
    }
    Ok(())
}

/// Convex hull in counterclockwise order (Andrew's monotone chain).
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && orient2d(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Largest pairwise distance, by rotating calipers over the hull.
pub fn diameter(points: &[Point]) -> f64 {
    let hull = convex_hull(points);
    match hull.len() {
        0 | 1 => 0.0,
        2 => distance(hull[0], hull[1]),
        h => {
            let area2 = |a: Point, b: Point, c: Point| (b - a).cross(c - a).abs();
            let mut best = 0.0f64;
            let mut j = 1;
            for i in 0..h {
                let a = hull[i];
                let b = hull[(i + 1) % h];
                while area2(a, b, hull[(j + 1) % h]) > area2(a, b, hull[j]) {
                    j = (j + 1) % h;
                }
                best = best.max(distance(a, hull[j])).max(distance(b, hull[j]));
            }
            best
        }
    }
}

/// Finite parameter window that encloses every useful Steiner location on
/// `gamma`: the span of the terminals' projections widened by the diameter of
/// the point set, clipped to the constraint's own range.
///
/// Outside the projection span every distance term grows monotonically, so
/// nothing beyond the window can beat its nearest edge.
pub fn search_window(points: &[Point], gamma: &Gamma) -> ParamRange {
    let (mut cmin, mut cmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for &p in points {
        let t = gamma.project(p);
        cmin = cmin.min(t);
        cmax = cmax.max(t);
    }
    let margin = diameter(points).max(1.0);
    let window = ParamRange {
        lo: cmin - margin,
        hi: cmax + margin,
    };
    let r = gamma.range();
    match window.intersect(&r) {
        Some(w) => w,
        // The constraint lies entirely beyond the span: its near end is
        // the only interesting part.
        None => {
            if r.hi <= window.lo {
                let lo = if r.lo.is_finite() {
                    r.lo
                } else {
                    r.hi - margin
                };
                ParamRange { lo, hi: r.hi }
            } else {
                let hi = if r.hi.is_finite() {
                    r.hi
                } else {
                    r.lo + margin
                };
                ParamRange { lo: r.lo, hi }
            }
        }
    }
}
