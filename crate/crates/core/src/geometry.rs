//! Exact lattice primitives shared by every tester.
//!
//! Coordinates are `i64` restricted to `|c| <= 2^30`. Differences then fit in
//! 31 bits and every 2D cross product is bounded by `2^63` in magnitude, which
//! is why the predicates below widen to `i128` before multiplying.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted absolute coordinate value.
pub const COORD_BOUND: i64 = 1 << 30;

/// A lattice point in the plane. Used on every 2D hot path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point2 {
    pub x: i64,
    pub y: i64,
}

impl Point2 {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point2 {
    fn from((x, y): (i64, i64)) -> Self {
        Self { x, y }
    }
}

/// A lattice point of arbitrary dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Self(coords.into())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn to_point2(&self) -> Result<Point2> {
        match self.0.as_slice() {
            [x, y] => Ok(Point2::new(*x, *y)),
            other => Err(Error::DimensionMismatch { expected: 2, found: other.len() }),
        }
    }
}

impl From<Point2> for LatticePoint {
    fn from(p: Point2) -> Self {
        Self(vec![p.x, p.y])
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Sign of a 2D orientation test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn from_cross(cross: i128) -> Self {
        match cross.signum() {
            1 => Orientation::CounterClockwise,
            -1 => Orientation::Clockwise,
            _ => Orientation::Collinear,
        }
    }

    /// The sign as an integer in `{-1, 0, 1}`.
    pub fn as_sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

/// Twice the signed area of triangle `abc`: `(b - a) x (c - a)`.
#[inline]
pub fn cross(a: Point2, b: Point2, c: Point2) -> i128 {
    let (ux, uy) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (vx, vy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    ux * vy - uy * vx
}

/// Cross product of two direction vectors.
#[inline]
pub fn cross_vec(u: (i64, i64), v: (i64, i64)) -> i128 {
    u.0 as i128 * v.1 as i128 - u.1 as i128 * v.0 as i128
}

#[inline]
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> Orientation {
    Orientation::from_cross(cross(a, b, c))
}

/// Orientation of three 2D lattice points.
pub fn orientation(a: &LatticePoint, b: &LatticePoint, c: &LatticePoint) -> Result<Orientation> {
    Ok(orient2d(a.to_point2()?, b.to_point2()?, c.to_point2()?))
}

/// Number of lattice points on the closed segment `[a, b]`: the gcd of the
/// absolute coordinate deltas, plus one.
pub fn segment_lattice_count(a: &[i64], b: &[i64]) -> Result<u64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    let g = a
        .iter()
        .zip(b)
        .fold(0u64, |g, (&p, &q)| g.gcd(&(p - q).unsigned_abs()));
    Ok(g + 1)
}

pub(crate) fn segment_lattice_count_2d(a: Point2, b: Point2) -> u64 {
    (a.x - b.x).unsigned_abs().gcd(&(a.y - b.y).unsigned_abs()) + 1
}

/// Per-axis bounds of a nonempty point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub min: Vec<i64>,
    pub max: Vec<i64>,
}

impl BoundingBox {
    /// Number of lattice points in the box.
    pub fn volume(&self) -> u128 {
        self.extents().map(|e| e as u128 + 1).product()
    }

    /// Number of lattice points in the box grown by `margin` on every side.
    pub fn volume_with_margin(&self, margin: u64) -> u128 {
        self.extents().map(|e| e as u128 + 1 + 2 * margin as u128).product()
    }

    pub fn extents(&self) -> impl Iterator<Item = u64> + '_ {
        self.min.iter().zip(&self.max).map(|(lo, hi)| (hi - lo) as u64)
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.iter()
            .zip(self.min.iter().zip(&self.max))
            .all(|(c, (lo, hi))| lo <= c && c <= hi)
    }
}

/// A deduplicated finite set of lattice points of a fixed dimension.
///
/// Points are stored row-major in a flat buffer, in first-occurrence order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<i64>,
    bbox: Option<BoundingBox>,
    had_duplicates: bool,
}

impl PointSet {
    /// Builds a set from rows, rejecting ragged rows and out-of-range
    /// coordinates. Duplicates are dropped and flagged.
    pub fn new<R, I>(dim: usize, rows: I) -> Result<Self>
    where
        R: AsRef<[i64]>,
        I: IntoIterator<Item = R>,
    {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut flat = Vec::new();
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            if let Some(&bad) = row.iter().find(|c| c.unsigned_abs() > COORD_BOUND as u64) {
                return Err(Error::CoordinateOutOfRange { value: bad });
            }
            flat.extend_from_slice(row);
        }
        Ok(Self::from_flat_unchecked(dim, flat))
    }

    pub fn from_points2(points: &[Point2]) -> Result<Self> {
        Self::new(2, points.iter().map(|p| [p.x, p.y]))
    }

    pub fn from_lattice_points(dim: usize, points: &[LatticePoint]) -> Result<Self> {
        Self::new(dim, points.iter().map(LatticePoint::coords))
    }

    pub fn empty(dim: usize) -> Result<Self> {
        Self::new::<[i64; 0], _>(dim, [])
    }

    fn from_flat_unchecked(dim: usize, flat: Vec<i64>) -> Self {
        let total = flat.len() / dim;
        let mut seen: HashSet<&[i64]> = HashSet::with_capacity(total);
        let mut coords = Vec::with_capacity(flat.len());
        for row in flat.chunks_exact(dim) {
            if seen.insert(row) {
                coords.extend_from_slice(row);
            }
        }
        let had_duplicates = coords.len() != flat.len();
        let bbox = bounding_box(dim, &coords);
        Self { dim, coords, bbox, had_duplicates }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[i64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[i64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn to_lattice_points(&self) -> Vec<LatticePoint> {
        self.iter().map(LatticePoint::new).collect()
    }

    /// The points as [`Point2`]s; fails unless `dim == 2`.
    pub fn points2(&self) -> Result<Vec<Point2>> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: self.dim });
        }
        Ok(self.coords.chunks_exact(2).map(|r| Point2::new(r[0], r[1])).collect())
    }

    pub fn bbox(&self) -> Option<&BoundingBox> {
        self.bbox.as_ref()
    }

    /// Whether duplicate rows were dropped while building the set.
    pub fn had_duplicates(&self) -> bool {
        self.had_duplicates
    }

    /// The same set with every point shifted by `offset`.
    pub fn translated(&self, offset: &[i64]) -> Result<Self> {
        if offset.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: offset.len() });
        }
        Self::new(
            self.dim,
            self.iter().map(|p| p.iter().zip(offset).map(|(c, o)| c + o).collect::<Vec<_>>()),
        )
    }
}

fn bounding_box(dim: usize, coords: &[i64]) -> Option<BoundingBox> {
    let mut rows = coords.chunks_exact(dim);
    let first = rows.next()?;
    let mut bbox = BoundingBox { min: first.to_vec(), max: first.to_vec() };
    for row in rows {
        for (k, &c) in row.iter().enumerate() {
            bbox.min[k] = bbox.min[k].min(c);
            bbox.max[k] = bbox.max[k].max(c);
        }
    }
    Some(bbox)
}

/// Validates raw integer tuples of dimension `d` into a [`PointSet`].
pub fn validate_input(raw: &[Vec<i64>], d: usize) -> Result<PointSet> {
    PointSet::new(d, raw)
}

/// L-infinity diameter: the largest per-axis extent of the bounding box.
pub fn diameter_linf(set: &PointSet) -> Result<u64> {
    let bbox = set.bbox().ok_or(Error::EmptySet)?;
    Ok(bbox.extents().max().unwrap_or(0))
}

/// Shape of a planar hull.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HullKind {
    Empty,
    Point,
    Segment,
    Full,
}

/// Convex hull of a planar lattice set as a strictly convex counterclockwise
/// vertex cycle, rotated to start at the lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hull2D {
    vertices: Vec<Point2>,
}

impl Hull2D {
    pub fn empty() -> Self {
        Self { vertices: Vec::new() }
    }

    /// Builds a hull from a counterclockwise cycle, checking strict convexity.
    pub fn from_ccw(mut vertices: Vec<Point2>) -> Result<Self> {
        match vertices.len() {
            0 | 1 => {}
            2 => {
                if vertices[0] == vertices[1] {
                    return Err(Error::Invariant("segment hull with equal endpoints".into()));
                }
                vertices.sort();
            }
            n => {
                for i in 0..n {
                    let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
                    if cross(a, b, c) <= 0 {
                        return Err(Error::Invariant(format!(
                            "hull vertices {a}, {b}, {c} are not a strict left turn"
                        )));
                    }
                }
                // All-left-turn cycles can still wind several times (star
                // polygons); a convex one has exactly one (y, x) local minimum.
                let key = |p: Point2| (p.y, p.x);
                let minima = (0..n)
                    .filter(|&i| {
                        let k = key(vertices[i]);
                        k < key(vertices[(i + n - 1) % n]) && k < key(vertices[(i + 1) % n])
                    })
                    .count();
                if minima != 1 {
                    return Err(Error::Invariant(format!("hull cycle winds {minima} times")));
                }
                let start = (0..n).min_by_key(|&i| vertices[i]).unwrap_or(0);
                vertices.rotate_left(start);
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn kind(&self) -> HullKind {
        match self.vertices.len() {
            0 => HullKind::Empty,
            1 => HullKind::Point,
            2 => HullKind::Segment,
            _ => HullKind::Full,
        }
    }

    /// Number of edges `h`: 0 for empty and point hulls, 1 for a segment.
    pub fn edge_count(&self) -> usize {
        match self.vertices.len() {
            0 | 1 => 0,
            2 => 1,
            n => n,
        }
    }

    /// Closed-region membership by half-plane tests.
    pub fn contains(&self, p: Point2) -> bool {
        match self.vertices.as_slice() {
            [] => false,
            [a] => *a == p,
            [a, b] => cross(*a, *b, p) == 0 && within_box(*a, *b, p),
            vs => (0..vs.len()).all(|i| cross(vs[i], vs[(i + 1) % vs.len()], p) >= 0),
        }
    }
}

/// Whether `p` lies in the axis-aligned box spanned by `a` and `b`.
pub(crate) fn within_box(a: Point2, b: Point2, p: Point2) -> bool {
    a.x.min(b.x) <= p.x && p.x <= a.x.max(b.x) && a.y.min(b.y) <= p.y && p.y <= a.y.max(b.y)
}
